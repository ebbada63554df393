//! Serde helpers for the JSON shapes used in reports.

use num_complex::Complex;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Serializes a complex number as `{"re": .., "im": ..}`.
pub fn complex<T: Serialize, S: Serializer>(c: &Complex<T>, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &c.re)?;
    st.serialize_field("im", &c.im)?;
    st.end()
}

/// Owned `{"re", "im"}` pair for places where a plain struct is easier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl ComplexJson {
    pub fn new<T: crate::Scalar>(c: Complex<T>) -> Self {
        ComplexJson {
            re: c.re.to_f64_lossy(),
            im: c.im.to_f64_lossy(),
        }
    }
}

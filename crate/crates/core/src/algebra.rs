//! Defining matrix of an Inoue surface and its eigen-data.
//!
//! An Inoue surface `S_M` is determined by `M ∈ SL(3, Z)` with one real
//! eigenvalue `α > 1` and a non-real conjugate pair `β, β̄`. This module
//! validates such matrices with exact integer arithmetic, finds the
//! eigenvalues and eigenvectors, and assembles the lattice basis `Y` (rows
//! `ξ, η, ζ`), its inverse and the expansion matrix `A` used by the Fourier
//! decomposition on the fiber torus.

use serde::Serialize;

use crate::dd::{two_prod, two_sum, Dd};
use crate::error::{Error, Result};
use crate::scalar::{cx, real, Cx, Scalar};

pub type Mat3<T> = [[T; 3]; 3];

/// A validated integral matrix with the Inoue eigenvalue pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct InoueMatrix {
    entries: [[i64; 3]; 3],
    det: i64,
}

/// Coefficients of the monic characteristic polynomial
/// `λ³ − c2·λ² + c1·λ − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub c2: i64,
    pub c1: i64,
}

impl CharPoly {
    /// Exact value of the polynomial at an integer point.
    pub fn eval_int(&self, x: i64) -> i128 {
        let x = x as i128;
        x * x * x - self.c2 as i128 * x * x + self.c1 as i128 * x - 1
    }

    pub fn eval<T: Scalar>(&self, x: T) -> T {
        ((x - T::of_i64(self.c2)) * x + T::of_i64(self.c1)) * x - T::one()
    }

    pub fn eval_complex<T: Scalar>(&self, z: Cx<T>) -> Cx<T> {
        ((z - real(T::of_i64(self.c2))) * z + real(T::of_i64(self.c1))) * z - real(T::one())
    }

    fn derivative<T: Scalar>(&self, x: T) -> T {
        (T::lit(3.0) * x - T::lit(2.0) * T::of_i64(self.c2)) * x + T::of_i64(self.c1)
    }

    /// Sum of the absolute values of the terms at `x`; the scale against
    /// which round-off in [`CharPoly::eval`] is measured.
    fn magnitude<T: Scalar>(&self, x: T) -> T {
        let ax = x.abs();
        ax * ax * ax
            + T::of_i64(self.c2.abs()) * ax * ax
            + T::of_i64(self.c1.abs()) * ax
            + T::one()
    }

    /// Discriminant of the cubic. Negative exactly when there is one real
    /// root and a non-real conjugate pair.
    pub fn discriminant(&self) -> i128 {
        let b = -(self.c2 as i128);
        let c = self.c1 as i128;
        let d: i128 = -1;
        18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d
    }
}

fn det3_int(m: &[[i64; 3]; 3]) -> i128 {
    let e = |i: usize, j: usize| m[i][j] as i128;
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

impl InoueMatrix {
    /// Validates a row-major integer matrix.
    pub fn new(entries: [[i64; 3]; 3]) -> Result<Self> {
        let det = det3_int(&entries);
        if det != 1 {
            return Err(Error::NotUnimodular {
                det: i64::try_from(det).unwrap_or(i64::MAX),
            });
        }
        let m = InoueMatrix { entries, det: 1 };
        let cp = m.char_poly_checked()?;
        let disc = cp.discriminant();
        if disc >= 0 {
            return Err(Error::WrongEigenvaluePattern {
                reason: if disc == 0 {
                    "characteristic polynomial has a repeated root".into()
                } else {
                    "all three eigenvalues are real".into()
                },
            });
        }
        // One real root; p(1) < 0 places it above 1.
        let p1 = cp.eval_int(1);
        if p1 >= 0 {
            return Err(Error::WrongEigenvaluePattern {
                reason: "the real eigenvalue does not exceed 1".into(),
            });
        }
        debug_assert!(cp.eval_int(-1) != 0);
        Ok(m)
    }

    /// Parses nine comma- or whitespace-separated integers, row-major.
    pub fn parse(s: &str) -> Result<Self> {
        let nums: std::result::Result<Vec<i64>, _> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse::<i64>)
            .collect();
        let nums = nums.map_err(|e| Error::InvalidArgument {
            reason: format!("matrix entry is not an integer: {e}"),
        })?;
        if nums.len() != 9 {
            return Err(Error::InvalidArgument {
                reason: format!("expected 9 matrix entries, found {}", nums.len()),
            });
        }
        let mut entries = [[0i64; 3]; 3];
        for (i, v) in nums.into_iter().enumerate() {
            entries[i / 3][i % 3] = v;
        }
        InoueMatrix::new(entries)
    }

    pub fn entries(&self) -> &[[i64; 3]; 3] {
        &self.entries
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// Trace and sum of principal 2×2 minors. The constant term is `−det = −1`.
    pub fn char_poly(&self) -> CharPoly {
        self.char_poly_checked()
            .expect("validated matrix has a representable characteristic polynomial")
    }

    fn char_poly_checked(&self) -> Result<CharPoly> {
        let e = |i: usize, j: usize| self.entries[i][j] as i128;
        let c2 = e(0, 0) + e(1, 1) + e(2, 2);
        let c1 = (e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0))
            + (e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0))
            + (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1));
        let conv = |v: i128| i64::try_from(v).map_err(|_| Error::IntegerOverflow);
        Ok(CharPoly {
            c2: conv(c2)?,
            c1: conv(c1)?,
        })
    }

    /// Exact inverse. Since `det = 1` this is the adjugate.
    pub fn inverse_entries(&self) -> Result<[[i64; 3]; 3]> {
        let e = |i: usize, j: usize| self.entries[i][j] as i128;
        let mut inv = [[0i64; 3]; 3];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // cofactor of (j, i)
                let (r0, r1) = other_two(j);
                let (c0, c1) = other_two(i);
                let minor = e(r0, c0) * e(r1, c1) - e(r0, c1) * e(r1, c0);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *slot = i64::try_from(sign * minor).map_err(|_| Error::IntegerOverflow)?;
            }
        }
        Ok(inv)
    }

    pub fn to_real<T: Scalar>(&self) -> Mat3<T> {
        let mut out = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = T::of_i64(self.entries[i][j]);
            }
        }
        out
    }
}

fn other_two(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// The matrix `A_m = [[0,1,0],[0,1,1],[1,0,m+1]]`, valid for `−2 ≤ m ≤ 3`.
pub fn cappell_shaneson(m: i64) -> Result<InoueMatrix> {
    let corner = m.checked_add(1).ok_or(Error::IntegerOverflow)?;
    InoueMatrix::new([[0, 1, 0], [0, 1, 1], [1, 0, corner]])
}

/// Eigenvalues and eigenvectors of an Inoue matrix.
///
/// `a` is scaled so that the lattice basis built from `(a, b)` has unit
/// determinant; `b` has the coordinate chosen as free variable in the null
/// space solve set to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData<T> {
    pub alpha: T,
    /// Non-real eigenvalue with positive imaginary part.
    pub beta: Cx<T>,
    pub a: [T; 3],
    pub b: [Cx<T>; 3],
    pub log_alpha: T,
}

impl<T: Scalar> EigenData<T> {
    /// Replaces `b` by `c·b` and rescales `a` so that `det Y` stays 1.
    pub fn with_rescaled_b(&self, c: Cx<T>) -> Result<Self> {
        let mut out = *self;
        for bi in out.b.iter_mut() {
            *bi = *bi * c;
        }
        out.a = normalized_a(&out.a, &out.b)?;
        Ok(out)
    }

    /// `α·β`, the non-trivial Dolbeault spectral point of the finite orbit.
    pub fn alpha_beta(&self) -> Cx<T> {
        self.beta * self.alpha
    }
}

fn basis_matrix<T: Scalar>(a: &[T; 3], b: &[Cx<T>; 3]) -> Mat3<T> {
    let mut y = [[T::zero(); 3]; 3];
    for i in 0..3 {
        y[i] = [a[i], b[i].re, b[i].im];
    }
    y
}

fn normalized_a<T: Scalar>(a: &[T; 3], b: &[Cx<T>; 3]) -> Result<[T; 3]> {
    let d = det3(&basis_matrix(a, b));
    if !(d.abs() > T::epsilon()) || !d.is_finite() {
        return Err(Error::SingularBasis {
            det: d.to_f64_lossy(),
        });
    }
    Ok([a[0] / d, a[1] / d, a[2] / d])
}

/// Computes `α`, `β` and the eigenvectors.
///
/// The real root is bracketed on `[1, 2 + |c2| + |c1|]` (a Cauchy bound),
/// bisected and polished by Newton's method; `β` then follows from the
/// deflated quadratic: `Re β = (c2 − α)/2`, `|β|² = 1/α`.
pub fn eigen_data<T: Scalar>(m: &InoueMatrix) -> Result<EigenData<T>> {
    let cp = m.char_poly();
    let alpha = real_root(&cp)?;

    let re = (T::of_i64(cp.c2) - alpha) / T::lit(2.0);
    let im2 = T::one() / alpha - re * re;
    if !(im2 > T::zero()) {
        return Err(Error::RootFindingFailure {
            reason: "deflated quadratic has real roots".into(),
        });
    }
    let beta = cx(re, im2.sqrt());
    let tol = root_tolerance(&cp, beta.norm());
    if cp.eval_complex(beta).norm() > tol * T::lit(4.0) {
        return Err(Error::RootFindingFailure {
            reason: format!("|p(beta)| = {:e}", cp.eval_complex(beta).norm()),
        });
    }

    let mr = m.to_real::<T>();
    let mut shifted = [[real(T::zero()); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            shifted[i][j] = real(mr[i][j]);
        }
    }
    let a_cx = null_vector(&shift_diag(&shifted, real(alpha)));
    let b = null_vector(&shift_diag(&shifted, beta));
    let a = [a_cx[0].re, a_cx[1].re, a_cx[2].re];
    let a = normalized_a(&a, &b)?;

    Ok(EigenData {
        alpha,
        beta,
        a,
        b,
        log_alpha: alpha.ln(),
    })
}

fn root_tolerance<T: Scalar>(cp: &CharPoly, x: T) -> T {
    T::lit(64.0) * T::epsilon() * cp.magnitude(x)
}

fn real_root<T: Scalar>(cp: &CharPoly) -> Result<T> {
    let mut lo = T::one();
    let mut hi = T::of_i64(2 + cp.c2.abs() + cp.c1.abs());
    if !(cp.eval(lo) < T::zero() && cp.eval(hi) > T::zero()) {
        return Err(Error::RootFindingFailure {
            reason: "no sign change on the bracketing interval".into(),
        });
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if cp.eval(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::lit(1e-6) * hi {
            break;
        }
    }
    let mut x = (lo + hi) / T::lit(2.0);
    let mut best = (cp.eval(x).abs(), x);
    for _ in 0..50 {
        let step = cp.eval(x) / cp.derivative(x);
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        x = next;
        let r = cp.eval(x).abs();
        if r < best.0 {
            best = (r, x);
        }
        if step.abs() <= T::epsilon() * x.abs() {
            break;
        }
    }
    let (resid, x) = best;
    if resid > root_tolerance(cp, x) {
        return Err(Error::RootFindingFailure {
            reason: format!("|p(alpha)| = {resid:e} above tolerance"),
        });
    }
    Ok(x)
}

fn shift_diag<T: Scalar>(m: &Mat3<Cx<T>>, lambda: Cx<T>) -> Mat3<Cx<T>> {
    let mut out = *m;
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = row[i] - lambda;
    }
    out
}

/// Null vector of a rank-2 complex 3×3 matrix: over all choices of a free
/// coordinate (set to 1) and a pair of rows, solve the 2×2 system with the
/// largest determinant.
fn null_vector<T: Scalar>(m: &Mat3<Cx<T>>) -> [Cx<T>; 3] {
    let mut best: Option<(T, usize, (usize, usize))> = None;
    for free in 0..3 {
        let (c0, c1) = other_two(free);
        for rows in [(0, 1), (0, 2), (1, 2)] {
            let (r0, r1) = rows;
            let d = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            let mag = d.norm();
            if best.is_none_or(|(b, _, _)| mag > b) {
                best = Some((mag, free, rows));
            }
        }
    }
    let (_, free, (r0, r1)) = best.expect("non-empty search");
    let (c0, c1) = other_two(free);
    let det = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let rhs0 = -m[r0][free];
    let rhs1 = -m[r1][free];
    let mut x = [real(T::zero()); 3];
    x[free] = real(T::one());
    x[c0] = (rhs0 * m[r1][c1] - m[r0][c1] * rhs1) / det;
    x[c1] = (m[r0][c0] * rhs1 - rhs0 * m[r1][c0]) / det;
    x
}

/// Lattice basis of the fiber torus: `Y` has rows `ξ, η, ζ` with
/// `ξ = (a1, Re b1, Im b1)` etc., so its columns are `a, Re b, Im b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeBasis<T> {
    pub y: Mat3<T>,
    /// Columns are the dual basis `ξ*, η*, ζ*`.
    pub y_inv: Mat3<T>,
    /// `diag(α; [[β1, −β2], [β2, β1]])`.
    pub a: Mat3<T>,
    /// Low-order part of row 1 of `Y⁻¹`, refined from the exact relation
    /// `row·M = α·row`. Row 1 plus this correction has its direction correct
    /// to about twice the working precision.
    pub alpha_row_lo: [T; 3],
}

pub fn lattice_basis<T: Scalar>(m: &InoueMatrix, e: &EigenData<T>) -> Result<LatticeBasis<T>> {
    let a_vec = normalized_a(&e.a, &e.b)?;
    let y = basis_matrix(&a_vec, &e.b);
    let y_inv = inv3(&y).ok_or(Error::SingularBasis {
        det: det3(&y).to_f64_lossy(),
    })?;
    let (b1, b2) = (e.beta.re, e.beta.im);
    let z = T::zero();
    let a = [[e.alpha, z, z], [z, b1, -b2], [z, b2, b1]];
    let alpha_row_lo = refine_alpha_row(m, e.alpha, &y_inv[0]);
    Ok(LatticeBasis {
        y,
        y_inv,
        a,
        alpha_row_lo,
    })
}

/// `α` as an unevaluated sum, from one Newton step with a compensated
/// Horner residual.
fn alpha_dd<T: Scalar>(cp: &CharPoly, alpha: T) -> Dd<T> {
    let coeffs = [T::one(), -T::of_i64(cp.c2), T::of_i64(cp.c1), -T::one()];
    let mut s = coeffs[0];
    let mut err = T::zero();
    for &c in &coeffs[1..] {
        let (p, pe) = two_prod(s, alpha);
        let (t, se) = two_sum(p, c);
        s = t;
        err = err * alpha + (pe + se);
    }
    Dd::new(alpha, -(s + err) / cp.derivative(alpha))
}

/// Correction to `row` (a left α-eigenvector) so that `row + lo` has the
/// direction of the exact eigenvector to about twice the working precision.
///
/// The exact direction is the cross product of two columns of `M − αI`,
/// whose entries are quadratics in `α` with integer coefficients.
fn refine_alpha_row<T: Scalar>(m: &InoueMatrix, alpha: T, row: &[T; 3]) -> [T; 3] {
    let e = m.entries();
    // Column j of `M − αI` as pairs `(c0, c1)` meaning `c0 + c1·α`.
    let col = |j: usize| -> [(i128, i128); 3] {
        std::array::from_fn(|r| (e[r][j] as i128, if r == j { -1 } else { 0 }))
    };
    let mul = |u: (i128, i128), v: (i128, i128)| [u.0 * v.0, u.0 * v.1 + u.1 * v.0, u.1 * v.1];
    let cross = |u: [(i128, i128); 3], v: [(i128, i128); 3]| -> [[i128; 3]; 3] {
        std::array::from_fn(|r| {
            let (p, q) = ((r + 1) % 3, (r + 2) % 3);
            let (x, y) = (mul(u[p], v[q]), mul(u[q], v[p]));
            [x[0] - y[0], x[1] - y[1], x[2] - y[2]]
        })
    };
    let eval = |q: &[i128; 3], a: T| q[0] as f64 + (q[1] as f64 + q[2] as f64 * a.to_f64_lossy()) * a.to_f64_lossy();

    let pairs = [(0, 1), (0, 2), (1, 2)];
    let polys = pairs
        .iter()
        .map(|&(i, k)| cross(col(i), col(k)))
        .max_by(|p, q| {
            let n = |c: &[[i128; 3]; 3]| c.iter().map(|r| eval(r, alpha).powi(2)).sum::<f64>();
            n(p).total_cmp(&n(q))
        })
        .expect("three column pairs");

    let a = alpha_dd(&m.char_poly(), alpha);
    let a2 = a.mul(a);
    let dir: [Dd<T>; 3] = std::array::from_fn(|r| {
        let q = polys[r].map(|c| T::lit(c as f64));
        Dd::of(q[0]).add(a.scale(q[1])).add(a2.scale(q[2]))
    });
    let dot = (0..3).fold(T::zero(), |s, j| s + row[j] * dir[j].hi);
    let norm2 = (0..3).fold(T::zero(), |s, j| s + dir[j].hi * dir[j].hi);
    if !(norm2 > T::zero()) {
        return [T::zero(); 3];
    }
    let scale = dot / norm2;
    std::array::from_fn(|j| {
        let v = dir[j].scale(scale);
        (v.hi - row[j]) + v.lo
    })
}

/// Residuals of every structural identity of the eigen-data and basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub char_poly_alpha: f64,
    pub char_poly_beta: f64,
    /// `|α·|β|² − 1|`
    pub det_identity: f64,
    pub eigvec_a: f64,
    pub eigvec_b: f64,
    /// `|det Y − 1|`
    pub det_y: f64,
    /// `max |Y·Y⁻¹ − I|`
    pub y_yinv: f64,
    /// `max |M·Y − Y·Aᵗ|`
    pub intertwining: f64,
    /// `max |row₁(Y⁻¹)·M − α·row₁(Y⁻¹)|`
    pub left_eigvec: f64,
}

/// Everything determined by the defining matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Surface<T> {
    pub matrix: InoueMatrix,
    pub eigen: EigenData<T>,
    pub basis: LatticeBasis<T>,
}

impl<T: Scalar> Surface<T> {
    pub fn new(matrix: InoueMatrix) -> Result<Self> {
        let eigen = eigen_data(&matrix)?;
        Self::from_parts(matrix, eigen)
    }

    pub fn cappell_shaneson(m: i64) -> Result<Self> {
        Self::new(cappell_shaneson(m)?)
    }

    pub fn from_parts(matrix: InoueMatrix, eigen: EigenData<T>) -> Result<Self> {
        let basis = lattice_basis(&matrix, &eigen)?;
        Ok(Surface {
            matrix,
            eigen,
            basis,
        })
    }

    /// Same surface with `b` multiplied by `c` (and `a` compensated).
    pub fn with_rescaled_b(&self, c: Cx<T>) -> Result<Self> {
        Self::from_parts(self.matrix, self.eigen.with_rescaled_b(c)?)
    }

    pub fn residuals(&self) -> Residuals {
        let e = &self.eigen;
        let cp = self.matrix.char_poly();
        let m = self.matrix.to_real::<T>();
        let f = |x: T| x.to_f64_lossy();

        let mut eig_a = T::zero();
        let mut eig_b = T::zero();
        for i in 0..3 {
            let mut ma = T::zero();
            let mut mb = real(T::zero());
            for j in 0..3 {
                ma = ma + m[i][j] * e.a[j];
                mb = mb + e.b[j] * m[i][j];
            }
            eig_a = eig_a.max((ma - e.alpha * e.a[i]).abs());
            eig_b = eig_b.max((mb - e.beta * e.b[i]).norm());
        }

        let b = &self.basis;
        let prod = mul3(&b.y, &b.y_inv);
        let my = mul3(&m, &b.y);
        let yat = mul3(&b.y, &transpose3(&b.a));
        let mut y_yinv = T::zero();
        let mut inter = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { T::one() } else { T::zero() };
                y_yinv = y_yinv.max((prod[i][j] - id).abs());
                inter = inter.max((my[i][j] - yat[i][j]).abs());
            }
        }
        let mut left = T::zero();
        for j in 0..3 {
            let mut acc = T::zero();
            for k in 0..3 {
                acc = acc + b.y_inv[0][k] * m[k][j];
            }
            left = left.max((acc - e.alpha * b.y_inv[0][j]).abs());
        }

        Residuals {
            char_poly_alpha: f(cp.eval(e.alpha).abs()),
            char_poly_beta: f(cp.eval_complex(e.beta).norm()),
            det_identity: f((e.alpha * e.beta.norm_sqr() - T::one()).abs()),
            eigvec_a: f(eig_a),
            eigvec_b: f(eig_b),
            det_y: f((det3(&b.y) - T::one()).abs()),
            y_yinv: f(y_yinv),
            intertwining: f(inter),
            left_eigvec: f(left),
        }
    }
}

pub fn det3<T: Scalar>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn inv3<T: Scalar>(m: &Mat3<T>) -> Option<Mat3<T>> {
    let d = det3(m);
    if d == T::zero() || !d.is_finite() {
        return None;
    }
    let mut out = [[T::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let (r0, r1) = other_two(j);
            let (c0, c1) = other_two(i);
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            let sign = if (i + j) % 2 == 0 { T::one() } else { -T::one() };
            *slot = sign * minor / d;
        }
    }
    Some(out)
}

pub fn mul3<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = T::zero();
            for k in 0..3 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn transpose3<T: Copy>(a: &Mat3<T>) -> Mat3<T> {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

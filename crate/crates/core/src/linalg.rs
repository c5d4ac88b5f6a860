//! Dense complex linear algebra for the 2x2 and 3x3 drift systems: cofactor
//! determinants, Gaussian elimination, and eigenvalues (closed quadratic for
//! dim 2, shifted-QR iteration for dim 3). Matrices are row-major slices of
//! length dim*dim.

use num_complex::Complex64 as C64;

/// Complex square root that is exact on the real axis: for `im == 0` and
/// `re < 0` the result is purely imaginary with no rounding leakage into the
/// real part. The sign bit of `im` selects the branch side.
pub(crate) fn csqrt(z: C64) -> C64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            return C64::new(z.re.sqrt(), z.im);
        }
        let s = if z.im.is_sign_negative() { -1.0 } else { 1.0 };
        return C64::new(0.0, s * (-z.re).sqrt());
    }
    // Kahan's stable form.
    let t = ((z.norm() + z.re.abs()) / 2.0).sqrt();
    if z.re >= 0.0 {
        C64::new(t, z.im / (2.0 * t))
    } else {
        C64::new(z.im.abs() / (2.0 * t), t.copysign(z.im))
    }
}

/// Determinant by cofactor expansion; the single determinant code path used
/// by every caller in the crate.
pub(crate) fn det(dim: usize, m: &[C64]) -> C64 {
    debug_assert_eq!(m.len(), dim * dim);
    match dim {
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => unreachable!("drift systems have dim <= 3"),
    }
}

/// Solve `m x = rhs` by Gaussian elimination with partial pivoting.
/// Returns `None` on an exactly zero pivot.
pub(crate) fn solve(dim: usize, m: &[C64], rhs: &[C64]) -> Option<Vec<C64>> {
    debug_assert_eq!(m.len(), dim * dim);
    debug_assert_eq!(rhs.len(), dim);
    let mut a = m.to_vec();
    let mut x = rhs.to_vec();
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&i, &j| {
                a[i * dim + col]
                    .norm_sqr()
                    .total_cmp(&a[j * dim + col].norm_sqr())
            })
            .unwrap();
        if a[pivot * dim + col] == C64::new(0.0, 0.0) {
            return None;
        }
        if pivot != col {
            for k in 0..dim {
                a.swap(col * dim + k, pivot * dim + k);
            }
            x.swap(col, pivot);
        }
        let inv = C64::new(1.0, 0.0) / a[col * dim + col];
        for row in col + 1..dim {
            let factor = a[row * dim + col] * inv;
            if factor != C64::new(0.0, 0.0) {
                for k in col..dim {
                    let t = a[col * dim + k];
                    a[row * dim + k] -= factor * t;
                }
                let t = x[col];
                x[row] -= factor * t;
            }
        }
    }
    for col in (0..dim).rev() {
        let mut acc = x[col];
        for k in col + 1..dim {
            acc -= a[col * dim + k] * x[k];
        }
        x[col] = acc / a[col * dim + col];
    }
    Some(x)
}

/// Eigenvalues of the two leading principal cases.
pub(crate) fn eigenvalues(dim: usize, m: &[C64]) -> Vec<C64> {
    match dim {
        1 => vec![m[0]],
        2 => eig2(m[0], m[1], m[2], m[3]).to_vec(),
        3 => eig_qr(3, m),
        _ => unreachable!("drift systems have dim <= 3"),
    }
}

/// Closed quadratic formula for a 2x2 block.
fn eig2(a: C64, b: C64, c: C64, d: C64) -> [C64; 2] {
    let half_trace = (a + d) / 2.0;
    let disc = ((a - d) / 2.0) * ((a - d) / 2.0) + b * c;
    let s = csqrt(disc);
    [half_trace + s, half_trace - s]
}

const QR_TOL: f64 = 1e-12;
const QR_MAX_SWEEPS: usize = 200;

/// Shifted QR iteration with Givens rotations; standard Hessenberg form
/// first, Wilkinson shifts, deflation at 1e-12 relative subdiagonals.
fn eig_qr(n: usize, m: &[C64]) -> Vec<C64> {
    let mut h = m.to_vec();
    let scale = m.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1e-300);

    // Reduce to upper Hessenberg by Givens similarity transforms.
    for col in 0..n.saturating_sub(2) {
        for row in col + 2..n {
            let g = Givens::zeroing(h[(col + 1) * n + col], h[row * n + col]);
            g.apply_rows(&mut h, n, col + 1, row);
            g.apply_cols(&mut h, n, col + 1, row);
        }
    }

    let mut end = n - 1;
    let mut sweeps = 0;
    while end > 0 {
        let sub = h[end * n + (end - 1)].norm();
        let local = h[(end - 1) * n + (end - 1)].norm() + h[end * n + end].norm();
        if sub <= QR_TOL * local.max(scale * f64::EPSILON) {
            h[end * n + (end - 1)] = C64::new(0.0, 0.0);
            end -= 1;
            continue;
        }
        sweeps += 1;
        if sweeps > QR_MAX_SWEEPS {
            break; // return the best available diagonal
        }

        // Wilkinson shift: trailing 2x2 eigenvalue closest to the corner.
        let corner = h[end * n + end];
        let [e1, e2] = eig2(
            h[(end - 1) * n + (end - 1)],
            h[(end - 1) * n + end],
            h[end * n + (end - 1)],
            corner,
        );
        let shift = if (e1 - corner).norm() <= (e2 - corner).norm() {
            e1
        } else {
            e2
        };

        for i in 0..=end {
            h[i * n + i] -= shift;
        }
        let mut rotations = Vec::with_capacity(end);
        for i in 0..end {
            let g = Givens::zeroing(h[i * n + i], h[(i + 1) * n + i]);
            g.apply_rows(&mut h, n, i, i + 1);
            rotations.push(g);
        }
        for (i, g) in rotations.iter().enumerate() {
            g.apply_cols(&mut h, n, i, i + 1);
        }
        for i in 0..=end {
            h[i * n + i] += shift;
        }
    }

    (0..n).map(|i| h[i * n + i]).collect()
}

/// Unitary plane rotation `[[c1, c2], [-g, f]] / r` mapping `(f, g)` to
/// `(r, 0)`.
struct Givens {
    a: C64, // conj(f)/r
    b: C64, // conj(g)/r
}

impl Givens {
    fn zeroing(f: C64, g: C64) -> Self {
        let r = (f.norm_sqr() + g.norm_sqr()).sqrt();
        if r == 0.0 {
            return Self {
                a: C64::new(1.0, 0.0),
                b: C64::new(0.0, 0.0),
            };
        }
        Self {
            a: f.conj() / r,
            b: g.conj() / r,
        }
    }

    fn apply_rows(&self, h: &mut [C64], n: usize, i: usize, j: usize) {
        for k in 0..n {
            let hi = h[i * n + k];
            let hj = h[j * n + k];
            h[i * n + k] = self.a * hi + self.b * hj;
            h[j * n + k] = -self.b.conj() * hi + self.a.conj() * hj;
        }
    }

    fn apply_cols(&self, h: &mut [C64], n: usize, i: usize, j: usize) {
        for k in 0..n {
            let hi = h[k * n + i];
            let hj = h[k * n + j];
            h[k * n + i] = hi * self.a.conj() + hj * self.b.conj();
            h[k * n + j] = -hi * self.b + hj * self.a;
        }
    }
}

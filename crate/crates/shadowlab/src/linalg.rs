//! Tiny 2×2 matrix helpers. Everything in this crate is at most
//! two-dimensional, so this replaces a linear-algebra dependency.

pub type Mat2 = [[f64; 2]; 2];

pub const IDENT: Mat2 = [[1.0, 0.0], [0.0, 1.0]];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat_vec(a: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

pub fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

pub fn det(a: &Mat2) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Solve `a x = b`; `None` when the matrix is numerically singular.
pub fn solve2(a: &Mat2, b: [f64; 2]) -> Option<[f64; 2]> {
    let d = det(a);
    if d.abs() < 1e-14 * (1.0 + frob(a)) {
        return None;
    }
    Some([
        (b[0] * a[1][1] - b[1] * a[0][1]) / d,
        (a[0][0] * b[1] - a[1][0] * b[0]) / d,
    ])
}

fn frob(a: &Mat2) -> f64 {
    (a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1]).sqrt()
}

/// Spectral norm (largest singular value), via the closed form for the
/// eigenvalues of AᵀA.
pub fn op_norm(a: &Mat2) -> f64 {
    let g = mat_mul(&transpose(a), a);
    let tr = g[0][0] + g[1][1];
    let dt = det(&g);
    let disc = (tr * tr / 4.0 - dt).max(0.0);
    (tr / 2.0 + disc.sqrt()).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_norm_of_diag() {
        assert!((op_norm(&[[3.0, 0.0], [0.0, -0.5]]) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn op_norm_of_rotation_is_one() {
        let c = 0.6f64;
        let s = 0.8f64;
        assert!((op_norm(&[[c, -s], [s, c]]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn solve_roundtrip() {
        let a = [[2.0, 1.0], [1.0, 1.0]];
        let x = solve2(&a, [3.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }
}

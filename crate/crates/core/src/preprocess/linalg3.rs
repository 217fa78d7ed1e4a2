//! Small dense linear algebra for the stain estimation: symmetric 3x3
//! eigendecomposition (cyclic Jacobi) and 2x2 normal-equation solves.

use crate::Scalar;

/// Eigenvalues (descending) and matching unit eigenvectors (columns) of a
/// symmetric 3x3 matrix, via cyclic Jacobi rotations.
pub fn sym3_eigen<F: Scalar>(m: [[F; 3]; 3]) -> ([F; 3], [[F; 3]; 3]) {
    let mut a = m;
    // v starts as identity and accumulates rotations; columns end up as
    // eigenvectors.
    let mut v = [[F::zero(); 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = F::one();
    }
    let two = F::one() + F::one();
    for _sweep in 0..64 {
        let off = (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]).sqrt();
        let scale = (a[0][0].abs() + a[1][1].abs() + a[2][2].abs()).max(F::epsilon());
        if off <= F::epsilon() * scale {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q].abs() <= F::epsilon() * scale {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
            // tan of the rotation angle, stable for large theta.
            let t = theta.signum() / (theta.abs() + (theta * theta + F::one()).sqrt());
            let c = F::one() / (t * t + F::one()).sqrt();
            let s = t * c;
            // A <- J^T A J restricted to the (p, q) plane.
            let app = a[p][p];
            let aqq = a[q][q];
            let apq = a[p][q];
            a[p][p] = c * c * app - two * s * c * apq + s * s * aqq;
            a[q][q] = s * s * app + two * s * c * apq + c * c * aqq;
            a[p][q] = F::zero();
            a[q][p] = F::zero();
            for r in 0..3 {
                if r != p && r != q {
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[p][r] = a[r][p];
                    a[r][q] = s * arp + c * arq;
                    a[q][r] = a[r][q];
                }
            }
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let values = [a[order[0]][order[0]], a[order[1]][order[1]], a[order[2]][order[2]]];
    let mut vectors = [[F::zero(); 3]; 3];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..3 {
            vectors[r][new_col] = v[r][old_col];
        }
    }
    (values, vectors)
}

/// Least-squares concentrations for `basis * c = od` with a 3x2 basis:
/// solves the 2x2 normal equations. Returns `None` when the basis is
/// (numerically) singular.
pub fn lstsq_3x2<F: Scalar>(basis: &[[F; 2]; 3], od: [F; 3]) -> Option<[F; 2]> {
    let mut btb = [[F::zero(); 2]; 2];
    let mut bty = [F::zero(); 2];
    for r in 0..3 {
        for i in 0..2 {
            for j in 0..2 {
                btb[i][j] += basis[r][i] * basis[r][j];
            }
            bty[i] += basis[r][i] * od[r];
        }
    }
    let det = btb[0][0] * btb[1][1] - btb[0][1] * btb[1][0];
    if det.abs() < F::from(1e-12).unwrap() {
        return None;
    }
    Some([
        (btb[1][1] * bty[0] - btb[0][1] * bty[1]) / det,
        (btb[0][0] * bty[1] - btb[1][0] * bty[0]) / det,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn matvec(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    #[test]
    fn diagonal_matrix_has_its_entries_as_eigenvalues() {
        let m = [[3.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]];
        let (vals, _) = sym3_eigen(m);
        assert_abs_diff_eq!(vals[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[2], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenpairs_satisfy_definition_on_random_symmetric_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut m = [[0.0f64; 3]; 3];
            for i in 0..3 {
                for j in i..3 {
                    let v = rng.gen_range(-2.0..2.0);
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            let (vals, vecs) = sym3_eigen(m);
            assert!(vals[0] >= vals[1] && vals[1] >= vals[2]);
            for k in 0..3 {
                let v = [vecs[0][k], vecs[1][k], vecs[2][k]];
                let mv = matvec(&m, v);
                for r in 0..3 {
                    assert_abs_diff_eq!(mv[r], vals[k] * v[r], epsilon = 1e-9);
                }
                let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn lstsq_recovers_exact_concentrations() {
        let basis = [[0.65, 0.07], [0.70, 0.99], [0.29, 0.11]];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let c = [rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0)];
            let od = [
                basis[0][0] * c[0] + basis[0][1] * c[1],
                basis[1][0] * c[0] + basis[1][1] * c[1],
                basis[2][0] * c[0] + basis[2][1] * c[1],
            ];
            let got = lstsq_3x2(&basis, od).unwrap();
            assert_abs_diff_eq!(got[0], c[0], epsilon = 1e-9);
            assert_abs_diff_eq!(got[1], c[1], epsilon = 1e-9);
        }
    }

    #[test]
    fn singular_basis_returns_none() {
        let basis = [[0.5, 0.5], [0.5, 0.5], [0.5, 0.5]];
        assert!(lstsq_3x2(&basis, [1.0, 1.0, 1.0]).is_none());
    }
}

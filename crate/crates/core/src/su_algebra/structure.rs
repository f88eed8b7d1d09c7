use std::sync::OnceLock;

use super::gellmann_basis;

/// Symmetric (`d`) and antisymmetric (`f`) SU(3) structure constants.
///
/// Arrays are 0-based: `d[j-1][k-1][l-1]` holds `d_jkl`. The [`d`](Self::d)
/// and [`f`](Self::f) accessors take the 1-based labels.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub d: [[[f64; 8]; 8]; 8],
    pub f: [[[f64; 8]; 8]; 8],
}

impl StructureConstants {
    fn compute() -> Self {
        let lambda = gellmann_basis();
        let mut d = [[[0.0; 8]; 8]; 8];
        let mut f = [[[0.0; 8]; 8]; 8];
        for j in 0..8 {
            for k in 0..8 {
                let a = lambda[j].matrix();
                let b = lambda[k].matrix();
                let anti = a * b + b * a;
                let comm = a * b - b * a;
                for l in 0..8 {
                    let c = lambda[l].matrix();
                    // d = tr({λj,λk}λl)/4, f = tr([λj,λk]λl)/(4i)
                    d[j][k][l] = (&anti * c).trace().re / 4.0;
                    f[j][k][l] = (&comm * c).trace().im / 4.0;
                }
            }
        }
        Self { d, f }
    }

    /// `d_jkl` with 1-based labels. Panics outside `1..=8`.
    pub fn d(&self, j: usize, k: usize, l: usize) -> f64 {
        self.d[j - 1][k - 1][l - 1]
    }

    /// `f_jkl` with 1-based labels. Panics outside `1..=8`.
    pub fn f(&self, j: usize, k: usize, l: usize) -> f64 {
        self.f[j - 1][k - 1][l - 1]
    }
}

/// The structure constants, computed on first use.
pub fn structure_constants() -> &'static StructureConstants {
    static CONSTANTS: OnceLock<StructureConstants> = OnceLock::new();
    CONSTANTS.get_or_init(StructureConstants::compute)
}

/// Star product `(u*v)ⱼ = √3 d_jkl uₖ vₗ`.
pub fn star(u: &[f64; 8], v: &[f64; 8]) -> [f64; 8] {
    let sc = structure_constants();
    let s3 = 3f64.sqrt();
    std::array::from_fn(|j| {
        let mut acc = 0.0;
        for (dk, &uk) in sc.d[j].iter().zip(u) {
            if uk == 0.0 {
                continue;
            }
            for (dkl, &vl) in dk.iter().zip(v) {
                acc += dkl * uk * vl;
            }
        }
        s3 * acc
    })
}

/// Wedge product `(u∧v)ₖ = f_ijk uᵢ vⱼ`.
pub fn wedge(u: &[f64; 8], v: &[f64; 8]) -> [f64; 8] {
    let sc = structure_constants();
    std::array::from_fn(|k| {
        let mut acc = 0.0;
        for (fi, &ui) in sc.f.iter().zip(u) {
            if ui == 0.0 {
                continue;
            }
            for (fij, &vj) in fi.iter().zip(v) {
                acc += fij[k] * ui * vj;
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su_algebra::{gellmann_dot, CMatrix, ALGEBRA_TOL};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn e(k: usize) -> [f64; 8] {
        let mut v = [0.0; 8];
        v[k - 1] = 1.0;
        v
    }

    #[test]
    fn known_values() {
        let sc = structure_constants();
        assert_abs_diff_eq!(sc.f(1, 2, 3), 1.0, epsilon = ALGEBRA_TOL);
        assert_abs_diff_eq!(sc.f(4, 5, 8), 3f64.sqrt() / 2.0, epsilon = ALGEBRA_TOL);
        assert_abs_diff_eq!(sc.f(3, 6, 7), -0.5, epsilon = ALGEBRA_TOL);
        assert_abs_diff_eq!(sc.d(8, 8, 8), -1.0 / 3f64.sqrt(), epsilon = ALGEBRA_TOL);
        assert_abs_diff_eq!(sc.d(3, 3, 8), 1.0 / 3f64.sqrt(), epsilon = ALGEBRA_TOL);
        assert_abs_diff_eq!(sc.d(3, 7, 7), -0.5, epsilon = ALGEBRA_TOL);
    }

    #[test]
    fn symmetry_and_antisymmetry() {
        let sc = structure_constants();
        for j in 0..8 {
            for k in 0..8 {
                for l in 0..8 {
                    let d = sc.d[j][k][l];
                    for p in [sc.d[k][j][l], sc.d[j][l][k], sc.d[l][k][j], sc.d[k][l][j]] {
                        assert_abs_diff_eq!(d, p, epsilon = ALGEBRA_TOL);
                    }
                    let f = sc.f[j][k][l];
                    assert_abs_diff_eq!(f + sc.f[k][j][l], 0.0, epsilon = ALGEBRA_TOL);
                    assert_abs_diff_eq!(f + sc.f[j][l][k], 0.0, epsilon = ALGEBRA_TOL);
                    assert_abs_diff_eq!(f + sc.f[l][k][j], 0.0, epsilon = ALGEBRA_TOL);
                }
            }
        }
    }

    #[test]
    fn product_rule_reconstructs_products() {
        let sc = structure_constants();
        let lambda = gellmann_basis();
        for j in 0..8 {
            for k in 0..8 {
                let direct = lambda[j].matrix() * lambda[k].matrix();
                let mut rebuilt = CMatrix::zeros(3, 3);
                if j == k {
                    rebuilt += CMatrix::identity(3, 3).scale(2.0 / 3.0);
                }
                for (l, op) in lambda.iter().enumerate() {
                    let c = Complex64::new(sc.d[j][k][l], sc.f[j][k][l]);
                    rebuilt += op.matrix() * c;
                }
                let err = (direct - rebuilt)
                    .iter()
                    .fold(0.0f64, |a, z| a.max(z.norm()));
                assert!(err < ALGEBRA_TOL, "λ{}λ{} mismatch {err}", j + 1, k + 1);
            }
        }
    }

    #[test]
    fn star_and_wedge_examples() {
        let s = star(&e(8), &e(8));
        for (i, v) in s.iter().enumerate() {
            let expect = if i == 7 { -1.0 } else { 0.0 };
            assert_abs_diff_eq!(*v, expect, epsilon = ALGEBRA_TOL);
        }
        assert_eq!(star(&[0.0; 8], &e(3)), [0.0; 8]);
        let w = wedge(&e(1), &e(2));
        for (i, v) in w.iter().enumerate() {
            let expect = if i == 2 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(*v, expect, epsilon = ALGEBRA_TOL);
        }
    }

    fn vec8() -> impl Strategy<Value = [f64; 8]> {
        prop::array::uniform8(-1.0f64..1.0)
    }

    proptest! {
        #[test]
        fn star_symmetric_wedge_antisymmetric(u in vec8(), v in vec8()) {
            let (a, b) = (star(&u, &v), star(&v, &u));
            let (w1, w2) = (wedge(&u, &v), wedge(&v, &u));
            let ww = wedge(&u, &u);
            for i in 0..8 {
                prop_assert!((a[i] - b[i]).abs() < 1e-12);
                prop_assert!((w1[i] + w2[i]).abs() < 1e-12);
                prop_assert!(ww[i].abs() < 1e-12);
            }
        }

        #[test]
        fn contractions_match_trace_formulas(u in vec8(), v in vec8()) {
            // (u*v)_j = (√3/4) tr({U,V}λj), (u∧v)_j = tr([U,V]λj)/(4i), U = u·λ
            let um = gellmann_dot(&u);
            let vm = gellmann_dot(&v);
            let anti = um.matrix() * vm.matrix() + vm.matrix() * um.matrix();
            let comm = um.matrix() * vm.matrix() - vm.matrix() * um.matrix();
            let s = star(&u, &v);
            let w = wedge(&u, &v);
            for (j, l) in gellmann_basis().iter().enumerate() {
                let st = 3f64.sqrt() / 4.0 * (&anti * l.matrix()).trace().re;
                let wt = (&comm * l.matrix()).trace().im / 4.0;
                prop_assert!((s[j] - st).abs() < 1e-12);
                prop_assert!((w[j] - wt).abs() < 1e-12);
            }
        }
    }
}

//! Eigenvalues from the Jacobi solver against roots of the characteristic
//! polynomial (Faddeev–LeVerrier coefficients, Durand–Kerner roots).

use num_complex::Complex64;
use proptest::prelude::*;
use qbsim::linalg::{hermitian_eig, ComplexMatrix};
use qbsim::model::{build_chain_hamiltonian, build_qb_hamiltonian, ModelParams};

/// Coefficients c_0..c_n of det(λI − A) = Σ c_k λ^k, c_n = 1.
fn char_poly(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.matmul(&m).unwrap();
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        m = next;
        c[n - k] = -a.matmul(&m).unwrap().trace() / k as f64;
    }
    c
}

fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k);
    let seed = Complex64::new(0.4, 0.9);
    let radius = 1.0 + c.iter().take(n).map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn oracle_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = durand_kerner(&char_poly(a)).iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn assert_matches(a: &ComplexMatrix, tol: f64) {
    let jacobi = hermitian_eig(a).unwrap().eigenvalues;
    let oracle = oracle_eigenvalues(a);
    for (x, y) in jacobi.iter().zip(&oracle) {
        assert!((x - y).abs() < tol, "{jacobi:?} vs {oracle:?}");
    }
}

fn hermitian(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    let mut it = entries.iter();
    for i in 0..n {
        m[(i, i)] = Complex64::new(it.next().unwrap().0, 0.0);
        for j in (i + 1)..n {
            let &(re, im) = it.next().unwrap();
            m[(i, j)] = Complex64::new(re, im);
            m[(j, i)] = Complex64::new(re, -im);
        }
    }
    m
}

#[test]
fn battery_hamiltonian() {
    let p = ModelParams {
        gamma: 0.3,
        delta: -0.7,
        dz: 1.1,
        gz: 0.4,
        theta: 0.9,
        temperature: 1.0,
        ..ModelParams::default()
    };
    assert_matches(&build_qb_hamiltonian(&p), 1e-8);
}

#[test]
fn three_site_chain() {
    let p = ModelParams {
        gamma: 0.5,
        delta: 0.2,
        theta: 0.3,
        ..ModelParams::default()
    };
    assert_matches(&build_chain_hamiltonian(&p, 3).unwrap(), 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_hermitian_4x4(entries in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 10)) {
        assert_matches(&hermitian(&entries, 4), 1e-7);
    }
}

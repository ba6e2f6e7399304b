//! Dense linear-algebra oracle for coupled angular momenta: the coupled
//! basis comes from diagonalising F² in each m block.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use trapnoise_core::angular_momentum::spin_matrix_element;
use trapnoise_core::{Axis, HalfInteger};

pub fn h(t: i32) -> HalfInteger {
    HalfInteger::from_twice(t)
}

/// Uncoupled product states `|m_S, m_I⟩`.
pub fn product_basis(s: i32, i: i32) -> Vec<(i32, i32)> {
    let mut v = Vec::new();
    for ms in (-s..=s).step_by(2) {
        for mi in (-i..=i).step_by(2) {
            v.push((ms, mi));
        }
    }
    v
}

pub fn ladder_up(j: i32, m: i32) -> f64 {
    let (j, m) = (j as f64 / 2.0, m as f64 / 2.0);
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

/// `F² = S² + I² + 2 S_z I_z + S_+ I_- + S_- I_+` in the product basis.
pub fn f_squared(s: i32, i: i32) -> (Vec<(i32, i32)>, DMatrix<f64>) {
    let basis = product_basis(s, i);
    let n = basis.len();
    let casimir = |j: i32| {
        let j = j as f64 / 2.0;
        j * (j + 1.0)
    };
    let mut m = DMatrix::zeros(n, n);
    for (col, &(ms, mi)) in basis.iter().enumerate() {
        m[(col, col)] += casimir(s) + casimir(i) + 2.0 * (ms as f64 / 2.0) * (mi as f64 / 2.0);
        // S_+ I_-
        if ms < s && mi > -i {
            let row = basis.iter().position(|&b| b == (ms + 2, mi - 2)).unwrap();
            m[(row, col)] += ladder_up(s, ms) * ladder_up(i, mi - 2);
        }
        // S_- I_+
        if ms > -s && mi < i {
            let row = basis.iter().position(|&b| b == (ms - 2, mi + 2)).unwrap();
            m[(row, col)] += ladder_up(s, ms - 2) * ladder_up(i, mi);
        }
    }
    (basis, m)
}

/// `(2F, 2m, coefficients over the product basis)`.
pub type CoupledState = (i32, i32, Vec<f64>);

/// Coupled states with the
/// sign fixed so that the `m_S = min(S, m + I)` component is positive
/// (Condon-Shortley for the `j1 = S` ordering).
pub fn coupled_states(s: i32, i: i32) -> (Vec<(i32, i32)>, Vec<CoupledState>) {
    let (basis, f2) = f_squared(s, i);
    let mut states = Vec::new();
    for m in (-(s + i)..=(s + i)).step_by(2) {
        let idx: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].0 + basis[k].1 == m).collect();
        let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| f2[(idx[r], idx[c])]);
        let eig = SymmetricEigen::new(block);
        for (col, &lambda) in eig.eigenvalues.iter().enumerate() {
            let f = (-1.0 + (1.0 + 4.0 * lambda).sqrt()).round() as i32;
            let mut vec = vec![0.0; basis.len()];
            for (r, &k) in idx.iter().enumerate() {
                vec[k] = eig.eigenvectors[(r, col)];
            }
            let top_ms = s.min(m + i);
            let k_top = basis.iter().position(|&b| b == (top_ms, m - top_ms)).unwrap();
            if vec[k_top] < 0.0 {
                vec.iter_mut().for_each(|x| *x = -*x);
            }
            states.push((f, m, vec));
        }
    }
    (basis, states)
}

/// `S_α` on the product basis (identity on the nucleus).
pub fn spin_operator(s: i32, basis: &[(i32, i32)], axis: Axis) -> Vec<Vec<Complex64>> {
    let n = basis.len();
    let mut op = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (r, &(ms_f, mi_f)) in basis.iter().enumerate() {
        for (c, &(ms_i, mi_i)) in basis.iter().enumerate() {
            if mi_f == mi_i {
                op[r][c] = spin_matrix_element(h(s), h(ms_f), h(ms_i), axis).unwrap();
            }
        }
    }
    op
}

/// `⟨f| op |i⟩` for real coefficient vectors.
pub fn sandwich(vf: &[f64], op: &[Vec<Complex64>], vi: &[f64]) -> Complex64 {
    let mut amp = Complex64::new(0.0, 0.0);
    for (r, row) in op.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            amp += vf[r] * x * vi[c];
        }
    }
    amp
}

/// All `(2S, 2I)` with `S ≥ 1/2`, `I ≥ 0` and `2S + 2I ≤ 8`.
pub fn small_systems() -> Vec<(i32, i32)> {
    let mut v = Vec::new();
    for s in 1..=8 {
        for i in 0..=(8 - s) {
            v.push((s, i));
        }
    }
    v
}

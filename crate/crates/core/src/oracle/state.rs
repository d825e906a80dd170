//! Truncated multi-mode Fock-space state vectors and the elementary
//! operations the oracle composes: coherent seeding, number-diagonal
//! unitaries (Kerr, phase shift), numerically exponentiated two-mode
//! generators (OPA squeezing, loss beam splitters), and moment extraction.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::NumberStats;

/// Largest tolerated norm loss per unitary application.
pub const NORM_DRIFT_LIMIT: f64 = 1e-10;

/// Single-mode coherent-state amplitudes e^{-α²/2} αⁿ/√(n!) on 0..=n_max.
///
/// Fails if the Poisson tail beyond `n_max` exceeds 1e-14, reporting the
/// truncation that would suffice.
pub fn coherent_amplitudes(alpha: f64, n_max: usize) -> Result<Vec<Complex64>> {
    let lambda = alpha * alpha;
    let mut amps = Vec::with_capacity(n_max + 1);
    let mut c = (-lambda / 2.0).exp();
    amps.push(Complex64::new(c, 0.0));
    for n in 1..=n_max {
        c *= alpha / (n as f64).sqrt();
        amps.push(Complex64::new(c, 0.0));
    }
    let tail = 1.0 - amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
    if tail > 1e-14 {
        let suggested = poisson_tail_cutoff(lambda, 1e-14).max(n_max + 1);
        return Err(Error::TruncationBudgetExceeded {
            detail: format!(
                "coherent seed alpha = {alpha} leaves Poisson tail {tail:e} beyond n_max = {n_max}"
            ),
            suggested,
        });
    }
    Ok(amps)
}

/// Single-mode vacuum amplitude list of the given dimension.
pub fn vacuum_amplitudes(dim: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[0] = Complex64::new(1.0, 0.0);
    v
}

/// Smallest n such that the Poisson(lambda) tail beyond n is below `budget`.
pub fn poisson_tail_cutoff(lambda: f64, budget: f64) -> usize {
    if lambda == 0.0 {
        return 0;
    }
    let mut p = (-lambda).exp();
    let mut cum = p;
    let mut n = 0usize;
    while 1.0 - cum > budget && n < 4096 {
        n += 1;
        p *= lambda / n as f64;
        cum += p;
    }
    n
}

/// A pure state on a tensor product of truncated oscillator modes.
///
/// Mode k holds occupation numbers `0..dims[k]`; amplitudes are stored in a
/// flat row-major vector (last mode fastest).
#[derive(Debug, Clone)]
pub struct TruncatedState {
    dims: Vec<usize>,
    strides: Vec<usize>,
    amps: Vec<Complex64>,
}

impl TruncatedState {
    pub fn vacuum(dims: &[usize]) -> Self {
        let mut s = Self::zero(dims);
        s.amps[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn zero(dims: &[usize]) -> Self {
        assert!(!dims.is_empty() && dims.iter().all(|&d| d > 0));
        let len: usize = dims.iter().product();
        let mut strides = vec![0usize; dims.len()];
        let mut acc = 1usize;
        for (k, &d) in dims.iter().enumerate().rev() {
            strides[k] = acc;
            acc *= d;
        }
        Self {
            dims: dims.to_vec(),
            strides,
            amps: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Product state from per-mode amplitude lists.
    pub fn product(mode_amps: &[Vec<Complex64>]) -> Self {
        let dims: Vec<usize> = mode_amps.iter().map(|m| m.len()).collect();
        let mut s = Self::zero(&dims);
        for (idx, amp) in s.amps.iter_mut().enumerate() {
            let mut a = Complex64::new(1.0, 0.0);
            for (k, m) in mode_amps.iter().enumerate() {
                a *= m[(idx / s.strides[k]) % s.dims[k]];
            }
            *amp = a;
        }
        s
    }

    /// Basis state |n₀, n₁, …⟩.
    pub fn basis(dims: &[usize], occupation: &[usize]) -> Self {
        let mut s = Self::zero(dims);
        let idx: usize = occupation
            .iter()
            .zip(&s.strides)
            .map(|(&n, &st)| n * st)
            .sum();
        s.amps[idx] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Flat amplitude access (row-major, last mode fastest).
    pub fn amp(&self, flat: usize) -> Complex64 {
        self.amps[flat]
    }

    pub fn set_amp(&mut self, flat: usize, value: Complex64) {
        self.amps[flat] = value;
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.dims, other.dims);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    fn occupation(&self, idx: usize, mode: usize) -> usize {
        (idx / self.strides[mode]) % self.dims[mode]
    }

    /// Multiplies each amplitude by e^{i f(n)} where n is the occupation of
    /// `mode`. The photon-number distribution is untouched by construction.
    pub fn apply_number_phase(&mut self, mode: usize, f: impl Fn(usize) -> f64) {
        let phases: Vec<Complex64> = (0..self.dims[mode])
            .map(|n| Complex64::from_polar(1.0, f(n)))
            .collect();
        let stride = self.strides[mode];
        let dim = self.dims[mode];
        for (idx, a) in self.amps.iter_mut().enumerate() {
            *a *= phases[(idx / stride) % dim];
        }
    }

    /// Kerr medium on one mode: amplitude at n multiplied by e^{-i γ n(n-1)}.
    pub fn apply_kerr(&mut self, mode: usize, gamma: f64) {
        self.apply_number_phase(mode, |n| -gamma * (n as f64) * (n as f64 - 1.0));
    }

    /// Phase shifter U = e^{i φ n̂}: amplitude at n multiplied by e^{i n φ},
    /// so the Heisenberg-picture annihilation operator acquires e^{iφ}.
    pub fn apply_phase_shift(&mut self, mode: usize, phi: f64) {
        self.apply_number_phase(mode, |n| phi * (n as f64));
    }

    /// Applies G = z a_i†a_j† - z* a_i a_j (the two-mode squeeze generator)
    /// into `out`, accumulating.
    fn pair_squeeze_generator(&self, i: usize, j: usize, z: Complex64, out: &mut Self) {
        let (si, sj) = (self.strides[i], self.strides[j]);
        let (di, dj) = (self.dims[i], self.dims[j]);
        let zc = z.conj();
        for (idx, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ni = (idx / si) % di;
            let nj = (idx / sj) % dj;
            if ni + 1 < di && nj + 1 < dj {
                let c = (((ni + 1) * (nj + 1)) as f64).sqrt();
                out.amps[idx + si + sj] += z * c * a;
            }
            if ni > 0 && nj > 0 {
                let c = ((ni * nj) as f64).sqrt();
                out.amps[idx - si - sj] -= zc * c * a;
            }
        }
    }

    /// Applies G = θ (a_i†a_j - a_i a_j†) (beam-splitter generator) into `out`.
    fn pair_bs_generator(&self, i: usize, j: usize, theta: f64, out: &mut Self) {
        let (si, sj) = (self.strides[i], self.strides[j]);
        let (di, dj) = (self.dims[i], self.dims[j]);
        for (idx, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ni = (idx / si) % di;
            let nj = (idx / sj) % dj;
            if ni + 1 < di && nj > 0 {
                let c = (((ni + 1) * nj) as f64).sqrt();
                out.amps[idx + si - sj] += theta * c * a;
            }
            if ni > 0 && nj + 1 < dj {
                let c = ((ni * (nj + 1)) as f64).sqrt();
                out.amps[idx - si + sj] -= theta * c * a;
            }
        }
    }

    /// e^G |ψ⟩ by sub-stepped Taylor summation with norm monitoring.
    ///
    /// `norm_bound` is any upper bound on ‖G‖; it only controls the number of
    /// substeps. Returns the norm² drift of the whole application.
    fn expm_apply<F>(&mut self, norm_bound: f64, apply_g: F) -> Result<f64>
    where
        F: Fn(&Self, &mut Self),
    {
        const THETA: f64 = 8.0;
        const MAX_TERMS: usize = 64;
        let substeps = (norm_bound / THETA).ceil().max(1.0) as usize;
        let inv_m = 1.0 / substeps as f64;
        let norm_before = self.norm_sqr();

        let mut term = self.clone();
        let mut next = Self::zero(&self.dims);
        for _ in 0..substeps {
            term.amps.copy_from_slice(&self.amps);
            let mut k = 0usize;
            loop {
                k += 1;
                if k > MAX_TERMS {
                    return Err(Error::TruncationBudgetExceeded {
                        detail: "generator exponential did not converge".into(),
                        suggested: self.dims[0] * 2,
                    });
                }
                next.amps.fill(Complex64::new(0.0, 0.0));
                apply_g(&term, &mut next);
                let scale = inv_m / k as f64;
                for (t, n) in term.amps.iter_mut().zip(&next.amps) {
                    *t = n * scale;
                }
                let term_norm = term.norm_sqr();
                for (s, t) in self.amps.iter_mut().zip(&term.amps) {
                    *s += t;
                }
                if term_norm <= 1e-34 * norm_before.max(1e-30) {
                    break;
                }
            }
        }
        let drift = (self.norm_sqr() - norm_before).abs();
        Ok(drift)
    }

    /// Two-mode squeezing with generator r (e^{iθ} a_i†a_j† - e^{-iθ} a_i a_j),
    /// whose Heisenberg action is a_i → cosh r a_i + e^{iθ} sinh r a_j†.
    pub fn apply_two_mode_squeeze(&mut self, i: usize, j: usize, r: f64, theta: f64) -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        let z = Complex64::from_polar(r, theta);
        let bound = 2.0 * r * (self.dims[i].max(self.dims[j]) as f64);
        let drift = self.expm_apply(bound, |s, out| s.pair_squeeze_generator(i, j, z, out))?;
        if drift > NORM_DRIFT_LIMIT {
            return Err(Error::TruncationBudgetExceeded {
                detail: format!("two-mode squeeze r = {r} lost norm {drift:e}"),
                suggested: self.dims[i] + self.dims[i] / 2,
            });
        }
        Ok(drift)
    }

    /// Beam splitter with a_i → √T a_i + √(1-T) a_j on a vacuum ancilla j.
    pub fn apply_beam_splitter(&mut self, i: usize, j: usize, transmissivity: f64) -> Result<f64> {
        if !(transmissivity > 0.0 && transmissivity <= 1.0) {
            return Err(Error::Domain(format!(
                "beam splitter transmissivity {transmissivity} out of (0,1]"
            )));
        }
        if transmissivity == 1.0 {
            return Ok(0.0);
        }
        let theta = transmissivity.sqrt().acos();
        let bound = 2.0 * theta * (self.dims[i].max(self.dims[j]) as f64);
        let drift = self.expm_apply(bound, |s, out| s.pair_bs_generator(i, j, theta, out))?;
        if drift > NORM_DRIFT_LIMIT {
            return Err(Error::TruncationBudgetExceeded {
                detail: format!("beam splitter T = {transmissivity} lost norm {drift:e}"),
                suggested: self.dims[j] + self.dims[j] / 2,
            });
        }
        Ok(drift)
    }

    /// ⟨a_m⟩.
    pub fn a_moment(&self, mode: usize) -> Complex64 {
        let stride = self.strides[mode];
        let dim = self.dims[mode];
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &a) in self.amps.iter().enumerate() {
            let n = (idx / stride) % dim;
            if n > 0 {
                acc += self.amps[idx - stride].conj() * (n as f64).sqrt() * a;
            }
        }
        acc
    }

    /// ⟨a_m²⟩.
    pub fn a2_moment(&self, mode: usize) -> Complex64 {
        let stride = self.strides[mode];
        let dim = self.dims[mode];
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &a) in self.amps.iter().enumerate() {
            let n = (idx / stride) % dim;
            if n > 1 {
                let c = ((n * (n - 1)) as f64).sqrt();
                acc += self.amps[idx - 2 * stride].conj() * c * a;
            }
        }
        acc
    }

    /// ⟨n̂_m⟩.
    pub fn n_moment(&self, mode: usize) -> f64 {
        self.diagonal_moment(mode, |n| n as f64)
    }

    /// ⟨n̂_m²⟩.
    pub fn n2_moment(&self, mode: usize) -> f64 {
        self.diagonal_moment(mode, |n| (n as f64) * (n as f64))
    }

    /// ⟨a_m†² a_m²⟩ = ⟨n̂(n̂-1)⟩.
    pub fn a4_normal_moment(&self, mode: usize) -> f64 {
        self.diagonal_moment(mode, |n| (n as f64) * (n as f64 - 1.0))
    }

    fn diagonal_moment(&self, mode: usize, f: impl Fn(usize) -> f64) -> f64 {
        let stride = self.strides[mode];
        let dim = self.dims[mode];
        self.amps
            .iter()
            .enumerate()
            .map(|(idx, a)| f((idx / stride) % dim) * a.norm_sqr())
            .sum()
    }

    /// ⟨n̂_i n̂_j⟩.
    pub fn nn_moment(&self, i: usize, j: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let ni = self.occupation(idx, i) as f64;
                let nj = self.occupation(idx, j) as f64;
                ni * nj * a.norm_sqr()
            })
            .sum()
    }

    /// Marginal photon-number distribution of one mode.
    pub fn number_distribution(&self, mode: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.dims[mode]];
        let stride = self.strides[mode];
        let dim = self.dims[mode];
        for (idx, a) in self.amps.iter().enumerate() {
            p[(idx / stride) % dim] += a.norm_sqr();
        }
        p
    }

    /// Photon-number variances and covariance of modes i and j.
    pub fn number_stats(&self, i: usize, j: usize) -> NumberStats {
        let norm = self.norm_sqr();
        let ni = self.n_moment(i) / norm;
        let nj = self.n_moment(j) / norm;
        NumberStats {
            var1: self.n2_moment(i) / norm - ni * ni,
            var2: self.n2_moment(j) / norm - nj * nj,
            cov: self.nn_moment(i, j) / norm - ni * nj,
        }
    }

    /// Applies a linear combination of elementary mode operators,
    /// returning Σ c_k Op_k |ψ⟩.
    pub fn apply_mode_ops(&self, terms: &[(Complex64, ModeOp)]) -> Self {
        let mut out = Self::zero(&self.dims);
        for &(coef, op) in terms {
            if coef == Complex64::new(0.0, 0.0) {
                continue;
            }
            op.accumulate(self, coef, &mut out);
        }
        out
    }
}

/// Elementary single-mode operators used to assemble composite output-mode
/// operators. `LinA` is the linearized Kerr field operator (1 - 2iγn̂)â, the
/// small-γ form of e^{-2iγn̂}â; `LinADag` is its adjoint.
#[derive(Debug, Clone, Copy)]
pub enum ModeOp {
    A(usize),
    ADag(usize),
    LinA { mode: usize, gamma: f64 },
    LinADag { mode: usize, gamma: f64 },
}

impl ModeOp {
    fn accumulate(self, input: &TruncatedState, coef: Complex64, out: &mut TruncatedState) {
        match self {
            ModeOp::A(mode) => {
                let stride = input.strides[mode];
                let dim = input.dims[mode];
                for (idx, &a) in input.amps.iter().enumerate() {
                    let n = (idx / stride) % dim;
                    if n > 0 {
                        out.amps[idx - stride] += coef * (n as f64).sqrt() * a;
                    }
                }
            }
            ModeOp::ADag(mode) => {
                let stride = input.strides[mode];
                let dim = input.dims[mode];
                for (idx, &a) in input.amps.iter().enumerate() {
                    let n = (idx / stride) % dim;
                    if n + 1 < dim {
                        out.amps[idx + stride] += coef * ((n + 1) as f64).sqrt() * a;
                    }
                }
            }
            // (1 - 2iγ n̂) â: annihilate then weight by the landing occupation.
            ModeOp::LinA { mode, gamma } => {
                let stride = input.strides[mode];
                let dim = input.dims[mode];
                for (idx, &a) in input.amps.iter().enumerate() {
                    let n = (idx / stride) % dim;
                    if n > 0 {
                        let w = Complex64::new(1.0, -2.0 * gamma * (n - 1) as f64);
                        out.amps[idx - stride] += coef * w * (n as f64).sqrt() * a;
                    }
                }
            }
            // â† (1 + 2iγ n̂): weight by the source occupation then create.
            ModeOp::LinADag { mode, gamma } => {
                let stride = input.strides[mode];
                let dim = input.dims[mode];
                for (idx, &a) in input.amps.iter().enumerate() {
                    let n = (idx / stride) % dim;
                    if n + 1 < dim {
                        let w = Complex64::new(1.0, 2.0 * gamma * n as f64);
                        out.amps[idx + stride] += coef * w * ((n + 1) as f64).sqrt() * a;
                    }
                }
            }
        }
    }

    /// Adjoint operator (used to build c†c-style number operators).
    pub fn adjoint(self) -> Self {
        match self {
            ModeOp::A(m) => ModeOp::ADag(m),
            ModeOp::ADag(m) => ModeOp::A(m),
            ModeOp::LinA { mode, gamma } => ModeOp::LinADag { mode, gamma },
            ModeOp::LinADag { mode, gamma } => ModeOp::LinA { mode, gamma },
        }
    }
}

/// Adjoint of a linear combination of mode operators.
pub fn adjoint_combo(terms: &[(Complex64, ModeOp)]) -> Vec<(Complex64, ModeOp)> {
    terms
        .iter()
        .map(|&(c, op)| (c.conj(), op.adjoint()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn coherent_vacuum_is_pure_vacuum() {
        let amps = coherent_amplitudes(0.0, 8).unwrap();
        assert_eq!(amps[0], Complex64::new(1.0, 0.0));
        assert!(amps[1..].iter().all(|a| a.norm_sqr() == 0.0));
    }

    #[test]
    fn coherent_poisson_statistics() {
        let amps = coherent_amplitudes(1.0, 30).unwrap();
        let state = TruncatedState::product(&[amps]);
        let n = state.n_moment(0);
        let var = state.n2_moment(0) - n * n;
        assert!((n - 1.0).abs() < 1e-12);
        assert!((var - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_completeness() {
        let amps = coherent_amplitudes(2.0, 40).unwrap();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn coherent_insufficient_truncation_reports_requirement() {
        let err = coherent_amplitudes(2.0, 6).unwrap_err();
        match err {
            Error::TruncationBudgetExceeded { suggested, .. } => assert!(suggested > 6),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn kerr_preserves_number_statistics() {
        let amps = coherent_amplitudes(1.3, 32).unwrap();
        let mut state = TruncatedState::product(&[amps]);
        let before = state.number_distribution(0);
        let n0 = state.n_moment(0);
        let v0 = state.n2_moment(0) - n0 * n0;
        state.apply_kerr(0, 0.37);
        let after = state.number_distribution(0);
        let n1 = state.n_moment(0);
        let v1 = state.n2_moment(0) - n1 * n1;
        for (b, a) in before.iter().zip(&after) {
            assert!((b - a).abs() <= 4.0 * f64::EPSILON * b.max(1e-300));
        }
        assert!((n0 - n1).abs() < 1e-14);
        assert!((v0 - v1).abs() < 1e-13);
    }

    #[test]
    fn kerr_zero_gamma_is_bitwise_identity() {
        let amps = coherent_amplitudes(1.0, 20).unwrap();
        let mut state = TruncatedState::product(std::slice::from_ref(&amps));
        state.apply_kerr(0, 0.0);
        let reference = TruncatedState::product(&[amps]);
        assert_eq!(state.amps, reference.amps);
    }

    #[test]
    fn kerr_integer_phase_wrap() {
        // gamma = pi: n(n-1) is even, so every phase is a multiple of 2*pi.
        let amps = coherent_amplitudes(1.0, 16).unwrap();
        let mut state = TruncatedState::product(std::slice::from_ref(&amps));
        state.apply_kerr(0, PI);
        for (a, b) in state.amps.iter().zip(&amps) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn phase_shift_conventions() {
        let amps = coherent_amplitudes(1.5, 32).unwrap();
        let mut state = TruncatedState::product(&[amps]);
        let before = state.a_moment(0);
        state.apply_phase_shift(0, 0.7);
        let after = state.a_moment(0);
        // Heisenberg a acquires e^{+i phi}; modulus unchanged.
        let expected = Complex64::from_polar(1.0, 0.7) * before;
        assert!((after - expected).norm() < 1e-12);
        assert!((after.norm() - before.norm()).abs() < 1e-13);

        let mut id = TruncatedState::product(&[coherent_amplitudes(1.5, 32).unwrap()]);
        id.apply_phase_shift(0, 0.0);
        assert!((id.a_moment(0) - before).norm() == 0.0);

        let mut wrap = TruncatedState::product(&[coherent_amplitudes(1.5, 32).unwrap()]);
        wrap.apply_phase_shift(0, 2.0 * PI);
        assert!((wrap.a_moment(0) - before).norm() < 1e-14);
    }

    #[test]
    fn squeeze_vacuum_thermal_occupation() {
        // <n> of each mode of a two-mode squeezed vacuum is sinh²(r).
        let mut state = TruncatedState::vacuum(&[40, 40]);
        let drift = state.apply_two_mode_squeeze(0, 1, 0.5, 0.3).unwrap();
        assert!(drift <= NORM_DRIFT_LIMIT);
        let expected = 0.5f64.sinh().powi(2);
        assert!((state.n_moment(0) - expected).abs() < 1e-12);
        assert!((state.n_moment(1) - expected).abs() < 1e-12);
    }

    #[test]
    fn squeeze_zero_is_identity() {
        let amps = coherent_amplitudes(1.0, 20).unwrap();
        let mut state = TruncatedState::product(&[amps.clone(), vec![Complex64::new(1.0, 0.0)]]);
        state.apply_two_mode_squeeze(0, 1, 0.0, 0.4).unwrap();
        let reference = TruncatedState::product(&[amps, vec![Complex64::new(1.0, 0.0)]]);
        assert_eq!(state.amps, reference.amps);
    }

    #[test]
    fn squeeze_heisenberg_first_moment() {
        // On coherent ⊗ vacuum, <a_1> after the squeeze is cosh(r)·α.
        let alpha = 1.2;
        let r = 0.6;
        let seed = coherent_amplitudes(alpha, 48).unwrap();
        let mut state = TruncatedState::product(&[seed, vacuum_amplitudes(48)]);
        state.apply_two_mode_squeeze(0, 1, r, 1.1).unwrap();
        let expected = Complex64::new(r.cosh() * alpha, 0.0);
        assert!((state.a_moment(0) - expected).norm() < 1e-10);
    }

    #[test]
    fn beam_splitter_attenuates_coherent_state() {
        let alpha = 1.1;
        let t = 0.7;
        let seed = coherent_amplitudes(alpha, 28).unwrap();
        let mut state = TruncatedState::product(&[seed, vacuum_amplitudes(20)]);
        state.apply_beam_splitter(0, 1, t).unwrap();
        // Pure loss sends |α⟩ to |√T α⟩.
        assert!((state.n_moment(0) - t * alpha * alpha).abs() < 1e-11);
        let expected = Complex64::new(t.sqrt() * alpha, 0.0);
        assert!((state.a_moment(0) - expected).norm() < 1e-11);
    }

    #[test]
    fn beam_splitter_single_photon_statistics() {
        let mut one = TruncatedState::basis(&[4, 4], &[1, 0]);
        one.apply_beam_splitter(0, 1, 0.7).unwrap();
        let p = one.number_distribution(0);
        assert!((p[0] - 0.3).abs() < 1e-12);
        assert!((p[1] - 0.7).abs() < 1e-12);
        assert!((one.n_moment(0) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn beam_splitter_full_transmission_is_identity() {
        let amps = coherent_amplitudes(0.9, 16).unwrap();
        let mut state = TruncatedState::product(&[amps.clone(), vacuum_amplitudes(4)]);
        state.apply_beam_splitter(0, 1, 1.0).unwrap();
        let reference = TruncatedState::product(&[amps, vacuum_amplitudes(4)]);
        assert_eq!(state.amps, reference.amps);
    }

    #[test]
    fn linearized_operator_on_vacuum_and_coherent() {
        // ⟨α|(1-2iγn̂)â|α⟩ = α(1-2iγα²) for real α, by direct Fock sum.
        let alpha = 1.4;
        let gamma = 3e-3;
        let state = TruncatedState::product(&[coherent_amplitudes(alpha, 40).unwrap()]);
        let w = state.apply_mode_ops(&[(Complex64::new(1.0, 0.0), ModeOp::LinA { mode: 0, gamma })]);
        let got = state.inner(&w);
        let expected = Complex64::new(alpha, 0.0) * Complex64::new(1.0, -2.0 * gamma * alpha * alpha);
        assert!((got - expected).norm() < 1e-12);

        let vac = TruncatedState::vacuum(&[8]);
        let wv = vac.apply_mode_ops(&[(Complex64::new(1.0, 0.0), ModeOp::LinA { mode: 0, gamma })]);
        assert_eq!(wv.norm_sqr(), 0.0);

        // gamma = 0 reduces to the plain annihilation operator.
        let w0 = state.apply_mode_ops(&[(
            Complex64::new(1.0, 0.0),
            ModeOp::LinA { mode: 0, gamma: 0.0 },
        )]);
        let plain = state.apply_mode_ops(&[(Complex64::new(1.0, 0.0), ModeOp::A(0))]);
        for (a, b) in w0.amps.iter().zip(&plain.amps) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn global_phase_gauge_invariance() {
        let seed = coherent_amplitudes(1.0, 32).unwrap();
        let mut state = TruncatedState::product(&[seed, vacuum_amplitudes(32)]);
        state.apply_two_mode_squeeze(0, 1, 0.4, 0.2).unwrap();
        let m1 = state.a_moment(0);
        let m2 = state.a2_moment(0);
        let n1 = state.n_moment(0);
        state.scale(Complex64::from_polar(1.0, 0.7321));
        assert!((state.a_moment(0) - m1).norm() < 1e-14);
        assert!((state.a2_moment(0) - m2).norm() < 1e-14);
        assert!((state.n_moment(0) - n1).abs() < 1e-14);
    }
}

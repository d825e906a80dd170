//! Dense two-mode density matrices for small-dimension sanity checks of the
//! loss channels. The purification path in `oracle` is the production lossy
//! route; this module exists so the two can be cross-checked.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::MomentSet;
use crate::oracle::ops::{GaussianPipeline, GaussianStep};
use crate::oracle::state::TruncatedState;

/// A dense density matrix on two truncated modes.
#[derive(Debug, Clone)]
pub struct TruncatedDensityMatrix {
    dims: [usize; 2],
    /// Row-major (d1*d2) × (d1*d2) matrix, entries[r * n + c] = ⟨r|ρ|c⟩.
    entries: Vec<Complex64>,
}

impl TruncatedDensityMatrix {
    pub fn from_pure(state: &TruncatedState) -> Self {
        assert_eq!(state.dims().len(), 2, "density path is two-mode only");
        let dims = [state.dims()[0], state.dims()[1]];
        let n = dims[0] * dims[1];
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                entries[r * n + c] = state.amp(r) * state.amp(c).conj();
            }
        }
        Self { dims, entries }
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    fn len(&self) -> usize {
        self.dims[0] * self.dims[1]
    }

    pub fn trace(&self) -> f64 {
        let n = self.len();
        (0..n).map(|i| self.entries[i * n + i].re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let d = (self.entries[r * n + c] - self.entries[c * n + r].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// ⟨v|ρ|v⟩ for an arbitrary vector; used to spot-check positivity.
    pub fn expectation_on(&self, v: &[Complex64]) -> f64 {
        let n = self.len();
        assert_eq!(v.len(), n);
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                acc += v[r].conj() * self.entries[r * n + c] * v[c];
            }
        }
        acc.re
    }

    /// ρ → UρU† for one Gaussian step, by applying the step to the columns
    /// of ρ and then to the columns of the conjugate transpose.
    pub fn apply_unitary_step(&mut self, step: GaussianStep) -> Result<()> {
        self.map_columns(step)?;
        self.adjoint_in_place();
        self.map_columns(step)?;
        self.adjoint_in_place();
        Ok(())
    }

    fn map_columns(&mut self, step: GaussianStep) -> Result<()> {
        let n = self.len();
        let pipeline = GaussianPipeline { steps: vec![step] };
        for c in 0..n {
            let mut col = TruncatedState::zero(&[self.dims[0], self.dims[1]]);
            for r in 0..n {
                col.set_amp(r, self.entries[r * n + c]);
            }
            // Column norms are not 1; the expm path is linear, so scale-free.
            pipeline.apply(&mut col).map_err(relabel_drift)?;
            for r in 0..n {
                self.entries[r * n + c] = col.amp(r);
            }
        }
        Ok(())
    }

    fn adjoint_in_place(&mut self) {
        let n = self.len();
        for r in 0..n {
            for c in (r + 1)..n {
                let a = self.entries[r * n + c].conj();
                let b = self.entries[c * n + r].conj();
                self.entries[r * n + c] = b;
                self.entries[c * n + r] = a;
            }
        }
        for r in 0..n {
            self.entries[r * n + r] = self.entries[r * n + r].conj();
        }
    }

    /// Pure-loss channel on one mode via the Kraus ladder
    /// K_k = Σ_n √(C(n,k) T^{n-k} (1-T)^k) |n-k⟩⟨n|.
    #[allow(clippy::needless_range_loop)]
    pub fn apply_loss(&mut self, mode: usize, transmissivity: f64) -> Result<()> {
        if !(transmissivity > 0.0 && transmissivity <= 1.0) {
            return Err(Error::Domain(format!(
                "loss transmissivity {transmissivity} out of (0,1]"
            )));
        }
        if transmissivity == 1.0 {
            return Ok(());
        }
        let d = self.dims[mode];
        let n = self.len();
        let kappa = kraus_weights(d, transmissivity);
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for k in 0..d {
            for r in 0..n {
                let (nr, or) = split_index(r, self.dims, mode);
                if nr < k {
                    continue;
                }
                let wr = kappa[nr][k];
                if wr == 0.0 {
                    continue;
                }
                let r_dst = join_index(nr - k, or, self.dims, mode);
                for c in 0..n {
                    let (nc, oc) = split_index(c, self.dims, mode);
                    if nc < k {
                        continue;
                    }
                    let wc = kappa[nc][k];
                    if wc == 0.0 {
                        continue;
                    }
                    let c_dst = join_index(nc - k, oc, self.dims, mode);
                    out[r_dst * n + c_dst] += wr * wc * self.entries[r * n + c];
                }
            }
        }
        self.entries = out;
        Ok(())
    }

    pub fn moments(&self, mode: usize) -> MomentSet {
        let n = self.len();
        let mut m1 = Complex64::new(0.0, 0.0);
        let mut m2 = Complex64::new(0.0, 0.0);
        let mut n1 = Complex64::new(0.0, 0.0);
        let mut n2 = Complex64::new(0.0, 0.0);
        for c in 0..n {
            let (nc, oc) = split_index(c, self.dims, mode);
            // tr(ρ a) = Σ_c √n_c ⟨c|ρ|c - 1⟩.
            if nc >= 1 {
                let c1 = join_index(nc - 1, oc, self.dims, mode);
                m1 += (nc as f64).sqrt() * self.entries[c * n + c1];
            }
            if nc >= 2 {
                let c2 = join_index(nc - 2, oc, self.dims, mode);
                m2 += ((nc * (nc - 1)) as f64).sqrt() * self.entries[c * n + c2];
            }
            let diag = self.entries[c * n + c];
            n1 += (nc as f64) * diag;
            n2 += (nc as f64) * (nc as f64 - 1.0) * diag;
        }
        MomentSet { m1, m2, n1, n2 }
    }

    pub fn number_distribution(&self, mode: usize) -> Vec<f64> {
        let n = self.len();
        let mut p = vec![0.0; self.dims[mode]];
        for c in 0..n {
            let (nc, _) = split_index(c, self.dims, mode);
            p[nc] += self.entries[c * n + c].re;
        }
        p
    }
}

fn relabel_drift(e: Error) -> Error {
    match e {
        Error::TruncationBudgetExceeded { detail, suggested } => Error::TruncationBudgetExceeded {
            detail: format!("density path: {detail}"),
            suggested,
        },
        other => other,
    }
}

#[allow(clippy::needless_range_loop)]
fn kraus_weights(dim: usize, t: f64) -> Vec<Vec<f64>> {
    // kappa[n][k] = sqrt(C(n,k) t^{n-k} (1-t)^k)
    let mut w = vec![vec![0.0; dim]; dim];
    for n in 0..dim {
        let mut binom = 1.0f64;
        for k in 0..=n {
            if k > 0 {
                binom *= (n - k + 1) as f64 / k as f64;
            }
            w[n][k] = (binom * t.powi((n - k) as i32) * (1.0 - t).powi(k as i32)).sqrt();
        }
    }
    w
}

fn split_index(idx: usize, dims: [usize; 2], mode: usize) -> (usize, usize) {
    let (n0, n1) = (idx / dims[1], idx % dims[1]);
    if mode == 0 {
        (n0, n1)
    } else {
        (n1, n0)
    }
}

fn join_index(n_mode: usize, other: usize, dims: [usize; 2], mode: usize) -> usize {
    if mode == 0 {
        n_mode * dims[1] + other
    } else {
        other * dims[1] + n_mode
    }
}

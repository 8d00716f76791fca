//! Dense state-vector representation.
//!
//! Convention: qubit 0 is the most significant bit of the basis index, so the
//! basis string reads left to right exactly like the ket notation, e.g. for
//! three qubits |011⟩ ↔ index 0b011 = 3 with qubit 0 = 0, qubit 1 = 1,
//! qubit 2 = 1.

use crate::error::{Error, Result};
use crate::float::{czero, real, tol_circuit, Real};
use crate::linalg::{hermitian_eigenvalues, DenseMatrix};
use crate::rng::{seeded, SimRng};
use num_complex::Complex;
use rand::Rng;

/// Cap on register width; the model itself needs at most 3 + k ≈ 16.
pub const MAX_QUBITS: usize = 24;

/// Normalized complex amplitude array over `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

/// Bit of `index` at qubit position `q` (MSB-first).
#[inline]
pub fn index_bit(index: usize, q: usize, n: usize) -> u8 {
    ((index >> (n - 1 - q)) & 1) as u8
}

/// Render a basis index as a bit string of length `n`.
pub fn basis_label(index: usize, n: usize) -> String {
    (0..n).map(|q| char::from(b'0' + index_bit(index, q, n))).collect()
}

/// Parse a basis string like "101" into (qubit count, index).
pub fn parse_basis(bits: &str) -> Result<(usize, usize)> {
    if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::BadBasisString(bits.to_string()));
    }
    let mut idx = 0usize;
    for b in bits.bytes() {
        idx = (idx << 1) | usize::from(b == b'1');
    }
    Ok((bits.len(), idx))
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyRegister);
    }
    if n > MAX_QUBITS {
        return Err(Error::QubitCapExceeded {
            requested: n,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

impl<T: Real> StateVector<T> {
    /// Computational basis state |index⟩ over `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_width(n)?;
        if index >= (1 << n) {
            return Err(Error::QubitOutOfRange {
                index,
                qubits: n,
            });
        }
        let mut amps = vec![czero(); 1 << n];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits: n, amps })
    }

    /// Basis state from a bit string, e.g. `from_bits("101")` = |101⟩.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let (n, idx) = parse_basis(bits)?;
        Self::basis(n, idx)
    }

    /// Wrap raw amplitudes; rejects non-normalized input.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_width(n)?;
        if amps.len() != (1 << n) {
            return Err(Error::BadAmplitudeLength {
                len: amps.len(),
                qubits: n,
            });
        }
        let state = Self { num_qubits: n, amps };
        let ns = state.norm_sqr();
        if (ns - T::one()).abs() > tol_circuit::<T>() {
            return Err(Error::NotNormalized {
                norm_sqr: ns.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Haar-ish random state for oracle tests: i.i.d. complex Gaussian-free
    /// uniform amplitudes, normalized. Deterministic per seed.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        check_width(n)?;
        let mut rng = seeded(seed);
        let mut amps: Vec<Complex<T>> = (0..(1usize << n))
            .map(|_| {
                Complex::new(
                    real::<T>(rng.gen_range(-1.0..1.0)),
                    real::<T>(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let norm = amps
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        for a in amps.iter_mut() {
            *a = *a / Complex::new(norm, T::zero());
        }
        Ok(Self { num_qubits: n, amps })
    }

    pub(crate) fn from_raw(num_qubits: usize, amps: Vec<Complex<T>>) -> Self {
        Self { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    /// Amplitude carried by a basis string, e.g. `amplitude_of("011010")`.
    pub fn amplitude_of(&self, bits: &str) -> Result<Complex<T>> {
        let (n, idx) = parse_basis(bits)?;
        if n != self.num_qubits {
            return Err(Error::BadBasisString(bits.to_string()));
        }
        Ok(self.amps[idx])
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
    }

    pub fn probability(&self, index: usize) -> T {
        self.amps[index].norm_sqr()
    }

    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::BadAmplitudeLength {
                len: other.amps.len(),
                qubits: self.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(czero(), |acc, (a, b)| acc + a.conj() * *b))
    }

    /// |⟨self|other⟩|² — fidelity between pure states.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// Largest per-amplitude deviation; the exact-amplitude comparison.
    pub fn max_amplitude_diff(&self, other: &Self) -> Result<T> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::BadAmplitudeLength {
                len: other.amps.len(),
                qubits: self.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), |m, d| if d > m { d } else { m }))
    }

    /// Kronecker product; `self`'s qubits precede `other`'s.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.num_qubits + other.num_qubits;
        check_width(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(*a * *b);
            }
        }
        Ok(Self { num_qubits: n, amps })
    }

    /// Relocate qubits: the qubit at position `i` moves to position `perm[i]`.
    /// Applying the inverse permutation afterwards restores the state exactly.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_qubits;
        if perm.len() != n {
            return Err(Error::BadPermutation);
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::BadPermutation);
            }
            seen[p] = true;
        }
        let mut amps = vec![czero(); self.amps.len()];
        for (old_idx, amp) in self.amps.iter().enumerate() {
            if *amp == czero() {
                continue;
            }
            let mut new_idx = 0usize;
            for (q, &dest) in perm.iter().enumerate() {
                if index_bit(old_idx, q, n) == 1 {
                    new_idx |= 1 << (n - 1 - dest);
                }
            }
            amps[new_idx] = *amp;
        }
        Ok(Self { num_qubits: n, amps })
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> Result<T> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                qubits: self.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| index_bit(*i, q, self.num_qubits) == 1)
            .map(|(_, a)| a.norm_sqr())
            .fold(T::zero(), |a, b| a + b))
    }

    /// Projective measurement of qubit `q` in the computational basis.
    /// Returns the sampled bit and the renormalized post-measurement state.
    pub fn measure_qubit(&self, q: usize, seed: u64) -> Result<(u8, Self)> {
        let mut rng = seeded(seed);
        self.measure_qubit_with(q, &mut rng)
    }

    /// Measurement drawing from a caller-owned generator, so protocols can
    /// thread one seeded stream through several measurements.
    pub fn measure_qubit_with(&self, q: usize, rng: &mut SimRng) -> Result<(u8, Self)> {
        let p1 = self.prob_one(q)?;
        let p0 = self.norm_sqr() - p1;
        let floor = real::<T>(1e-14);
        if p0 < floor && p1 < floor {
            return Err(Error::CorruptedState);
        }
        let u: f64 = rng.gen();
        let outcome: u8 = u8::from(u < p1.to_f64().unwrap_or(0.0));
        let p = if outcome == 1 { p1 } else { p0 };
        let scale = Complex::new(T::one() / p.sqrt(), T::zero());
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if index_bit(i, q, self.num_qubits) == outcome {
                    *a * scale
                } else {
                    czero()
                }
            })
            .collect();
        Ok((outcome, Self { num_qubits: self.num_qubits, amps }))
    }

    /// Reduced density matrix over the qubits in `cut` (order-sensitive).
    pub fn reduced_density(&self, cut: &[usize]) -> Result<DenseMatrix<T>> {
        let n = self.num_qubits;
        if cut.is_empty() || cut.len() >= n {
            return Err(Error::InvalidCut);
        }
        let mut seen = vec![false; n];
        for &q in cut {
            if q >= n || seen[q] {
                return Err(Error::InvalidCut);
            }
            seen[q] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|q| !seen[*q]).collect();
        let dc = 1usize << cut.len();
        let dr = 1usize << rest.len();
        // Reshape ψ into M[cut][rest], then ρ = M M†.
        let mut m = vec![czero::<T>(); dc * dr];
        for (idx, amp) in self.amps.iter().enumerate() {
            let mut ci = 0usize;
            for (pos, &q) in cut.iter().enumerate() {
                ci |= usize::from(index_bit(idx, q, n)) << (cut.len() - 1 - pos);
            }
            let mut ri = 0usize;
            for (pos, &q) in rest.iter().enumerate() {
                ri |= usize::from(index_bit(idx, q, n)) << (rest.len() - 1 - pos);
            }
            m[ci * dr + ri] = *amp;
        }
        let mut rho = DenseMatrix::zeros(dc);
        for a in 0..dc {
            for b in 0..dc {
                let mut acc = czero();
                for r in 0..dr {
                    acc = acc + m[a * dr + r] * m[b * dr + r].conj();
                }
                rho[(a, b)] = acc;
            }
        }
        Ok(rho)
    }

    /// Von Neumann entropy (base 2) of the reduced state over `cut`.
    pub fn entanglement_entropy(&self, cut: &[usize]) -> Result<T> {
        let rho = self.reduced_density(cut)?;
        let eigs = hermitian_eigenvalues(&rho);
        let floor = real::<T>(1e-12);
        let ln2 = real::<T>(std::f64::consts::LN_2);
        let mut s = T::zero();
        for lam in eigs {
            if lam > floor {
                s = s - lam * (lam.ln() / ln2);
            }
        }
        // Guard tiny negative round-off.
        Ok(if s < T::zero() { T::zero() } else { s })
    }
}

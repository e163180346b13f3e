//! Fiat–Shamir transcript: a hash accumulator standing in for the
//! interactive verifier's random challenges.
//!
//! Every prover message is absorbed before the challenge that depends on it;
//! byte-identical absorb sequences yield identical challenge sequences.

use sha2::{Digest, Sha256, Sha512};

use crate::field::FieldElement;
use crate::group::GroupElement;

#[derive(Clone)]
pub struct Transcript {
    state: [u8; 32],
    round_counter: u64,
}

impl Transcript {
    pub fn new(domain: &[u8]) -> Self {
        let mut h = Sha256::new();
        h.update(b"zkt-transcript-v1");
        h.update((domain.len() as u64).to_le_bytes());
        h.update(domain);
        Transcript {
            state: h.finalize().into(),
            round_counter: 0,
        }
    }

    pub fn absorb_bytes(&mut self, label: &[u8], data: &[u8]) {
        let mut h = Sha256::new();
        h.update(self.state);
        h.update([0x01u8]);
        h.update((label.len() as u64).to_le_bytes());
        h.update(label);
        h.update((data.len() as u64).to_le_bytes());
        h.update(data);
        self.state = h.finalize().into();
    }

    pub fn absorb_u64(&mut self, label: &[u8], v: u64) {
        self.absorb_bytes(label, &v.to_le_bytes());
    }

    pub fn absorb_scalar<F: FieldElement>(&mut self, label: &[u8], v: &F) {
        self.absorb_bytes(label, &v.to_bytes());
    }

    pub fn absorb_scalars<F: FieldElement>(&mut self, label: &[u8], vs: &[F]) {
        let mut buf = Vec::with_capacity(vs.len() * F::NUM_BYTES);
        for v in vs {
            buf.extend_from_slice(&v.to_bytes());
        }
        self.absorb_bytes(label, &buf);
    }

    pub fn absorb_point<G: GroupElement>(&mut self, label: &[u8], p: &G) {
        self.absorb_bytes(label, &p.compress());
    }

    pub fn absorb_points<G: GroupElement>(&mut self, label: &[u8], ps: &[G]) {
        let mut buf = Vec::with_capacity(ps.len() * G::COMPRESSED_BYTES);
        for p in ps {
            buf.extend_from_slice(&p.compress());
        }
        self.absorb_bytes(label, &buf);
    }

    /// Derive one field element bound to everything absorbed so far. The
    /// round counter is folded in, so repeated calls with the same label
    /// yield independent challenges.
    pub fn challenge<F: FieldElement>(&mut self, label: &[u8]) -> F {
        let mut h = Sha512::new();
        h.update(self.state);
        h.update([0x02u8]);
        h.update((label.len() as u64).to_le_bytes());
        h.update(label);
        h.update(self.round_counter.to_le_bytes());
        let mut wide = [0u8; 64];
        wide.copy_from_slice(&h.finalize());

        // ratchet the state so the challenge itself is bound into history
        let mut s = Sha256::new();
        s.update(self.state);
        s.update([0x03u8]);
        s.update(label);
        s.update(self.round_counter.to_le_bytes());
        self.state = s.finalize().into();
        self.round_counter += 1;

        F::from_uniform_bytes(&wide)
    }

    pub fn challenge_nonzero<F: FieldElement>(&mut self, label: &[u8]) -> F {
        loop {
            let c: F = self.challenge(label);
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn challenge_vec<F: FieldElement>(&mut self, label: &[u8], n: usize) -> Vec<F> {
        (0..n).map(|_| self.challenge(label)).collect()
    }

    pub fn rounds(&self) -> u64 {
        self.round_counter
    }
}

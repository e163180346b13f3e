//! Hyrax-style Pedersen polynomial commitment over multilinear extensions.
//!
//! A tensor of 2^d entries is laid out as a 2^⌈d/2⌉ × 2^⌊d/2⌋ matrix; each
//! row gets one Pedersen vector commitment, so commitments are O(√D) group
//! elements. A proof of evaluation reduces S̃(v) to one dot product against
//! the column weights and discharges it with a Bulletproofs-style folding
//! argument: O(log D) group elements per proof.
//!
//! The scheme is binding under discrete log in the chosen group, hiding when
//! blinders are nonzero, and homomorphic row-by-row.

use rand::RngCore;

use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Result, ZkError};
use crate::field::FieldElement;
use crate::group::{group_msm, GroupElement};
use crate::mle::eq_table;
use crate::tensor::Tensor;
use crate::transcript::Transcript;

/// Public parameters: column generators plus the blinding and inner-product
/// generators, all derived nothing-up-my-sleeve from a seed string.
#[derive(Clone, Debug)]
pub struct PublicParams<G: GroupElement> {
    pub max_log_dim: u32,
    pub seed: Vec<u8>,
    pub gens: Vec<G>,
    pub blinding_gen: G,
    pub ip_gen: G,
}

/// Row/column split for a tensor with `num_vars` variables.
pub fn matrix_layout(num_vars: usize) -> (usize, usize) {
    let row_vars = num_vars.div_ceil(2);
    let col_vars = num_vars / 2;
    (1usize << row_vars, 1usize << col_vars)
}

pub fn keygen<G: GroupElement>(max_log_dim: u32, seed: &[u8]) -> PublicParams<G> {
    assert!(max_log_dim >= 1, "max_log_dim must be at least 1");
    let (_, cols) = matrix_layout(max_log_dim as usize);
    let mut gens = Vec::with_capacity(cols);
    for i in 0..cols {
        let mut label = Vec::with_capacity(seed.len() + 16);
        label.extend_from_slice(b"col-gen:");
        label.extend_from_slice(seed);
        label.extend_from_slice(&(i as u64).to_le_bytes());
        gens.push(G::hash_to_group(&label));
    }
    let mut blind_label = b"blind-gen:".to_vec();
    blind_label.extend_from_slice(seed);
    let mut ip_label = b"ip-gen:".to_vec();
    ip_label.extend_from_slice(seed);
    PublicParams {
        max_log_dim,
        seed: seed.to_vec(),
        gens,
        blinding_gen: G::hash_to_group(&blind_label),
        ip_gen: G::hash_to_group(&ip_label),
    }
}

impl<G: GroupElement> PublicParams<G> {
    pub fn write_into(&self, w: &mut ByteWriter) {
        w.write_u32(self.max_log_dim);
        w.write_bytes(&self.seed);
        w.write_points(&self.gens);
        w.write_point(&self.blinding_gen);
        w.write_point(&self.ip_gen);
    }

    pub fn read_from(r: &mut ByteReader<'_>) -> Result<Self> {
        let max_log_dim = r.read_u32()?;
        if max_log_dim == 0 || max_log_dim > 40 {
            return Err(ZkError::decode("implausible max_log_dim"));
        }
        let seed = r.read_bytes()?.to_vec();
        let gens = r.read_points(1 << 20)?;
        let blinding_gen = r.read_point()?;
        let ip_gen = r.read_point()?;
        Ok(PublicParams { max_log_dim, seed, gens, blinding_gen, ip_gen })
    }
}

/// One Pedersen vector commitment per matrix row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorCommitment<G> {
    pub rows: Vec<G>,
}

impl<G: GroupElement> TensorCommitment<G> {
    /// Homomorphic combination: self + c · other, row by row.
    pub fn add_scaled(&self, other: &Self, c: &G::Scalar) -> Result<Self> {
        if self.rows.len() != other.rows.len() {
            return Err(ZkError::shape("commitment row counts differ"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| *a + b.scalar_mul(c))
            .collect();
        Ok(TensorCommitment { rows })
    }

    pub fn write_into(&self, w: &mut ByteWriter) {
        w.write_points(&self.rows);
    }

    pub fn read_from(r: &mut ByteReader<'_>) -> Result<Self> {
        Ok(TensorCommitment { rows: r.read_points(1 << 20)? })
    }
}

/// Prover-side row blinders. Never serialized toward the verifier; the
/// prover persists them in its private sidecar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blinders<F> {
    pub rows: Vec<F>,
}

impl<F: FieldElement> Blinders<F> {
    pub fn zero(num_rows: usize) -> Self {
        Blinders { rows: vec![F::ZERO; num_rows] }
    }

    pub fn random<R: RngCore>(num_rows: usize, rng: &mut R) -> Self {
        Blinders { rows: (0..num_rows).map(|_| F::random(rng)).collect() }
    }

    pub fn add_scaled(&self, other: &Self, c: F) -> Result<Self> {
        if self.rows.len() != other.rows.len() {
            return Err(ZkError::shape("blinder row counts differ"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| *a + c * *b)
            .collect();
        Ok(Blinders { rows })
    }
}

/// Commits a tensor: row r maps to MSM(row data, gens) + s_r · H.
pub fn commit<G: GroupElement>(
    t: &Tensor<G::Scalar>,
    blinders: &Blinders<G::Scalar>,
    pp: &PublicParams<G>,
) -> Result<TensorCommitment<G>> {
    use rayon::prelude::*;
    let d = t.num_vars();
    if d > pp.max_log_dim as usize {
        return Err(ZkError::Capacity(format!(
            "tensor has 2^{d} entries but keys cover only 2^{}",
            pp.max_log_dim
        )));
    }
    let (rows, cols) = matrix_layout(d);
    if blinders.rows.len() != rows {
        return Err(ZkError::shape("one blinder per row required"));
    }
    let gens = &pp.gens[..cols];
    let data = t.data();
    let out: Vec<G> = (0..rows)
        .into_par_iter()
        .map(|r| {
            let row = &data[r * cols..(r + 1) * cols];
            let mut acc = G::msm(row, gens);
            if !blinders.rows[r].is_zero() {
                acc += pp.blinding_gen.scalar_mul(&blinders.rows[r]);
            }
            acc
        })
        .collect();
    Ok(TensorCommitment { rows: out })
}

/// Proof that the committed tensor's MLE takes `claimed_value` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalProof<G: GroupElement> {
    pub claimed_value: G::Scalar,
    pub l_points: Vec<G>,
    pub r_points: Vec<G>,
    pub final_w: G::Scalar,
    pub final_blind: G::Scalar,
}

impl<G: GroupElement> EvalProof<G> {
    pub fn write_into(&self, w: &mut ByteWriter) {
        w.write_scalar(&self.claimed_value);
        w.write_points(&self.l_points);
        w.write_points(&self.r_points);
        w.write_scalar(&self.final_w);
        w.write_scalar(&self.final_blind);
    }

    pub fn read_from(r: &mut ByteReader<'_>) -> Result<Self> {
        Ok(EvalProof {
            claimed_value: r.read_scalar()?,
            l_points: r.read_points(64)?,
            r_points: r.read_points(64)?,
            final_w: r.read_scalar()?,
            final_blind: r.read_scalar()?,
        })
    }
}

fn split_point<F: FieldElement>(point: &[F]) -> (Vec<F>, Vec<F>) {
    let row_vars = point.len().div_ceil(2);
    (point[..row_vars].to_vec(), point[row_vars..].to_vec())
}

/// Produces the evaluation proof for S̃(point). The claimed value is
/// computed here (it equals `mle_evaluate(t, point)`) and embedded in the
/// proof; the transcript binds it before any folding challenge.
pub fn prove_eval<G: GroupElement, R: RngCore>(
    t: &Tensor<G::Scalar>,
    blinders: &Blinders<G::Scalar>,
    point: &[G::Scalar],
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
    rng: &mut R,
) -> Result<EvalProof<G>> {
    type S<G> = <G as GroupElement>::Scalar;
    let d = t.num_vars();
    if point.len() != d {
        return Err(ZkError::shape(format!(
            "evaluation point has {} coordinates, tensor has {d} variables",
            point.len()
        )));
    }
    let (rows, cols) = matrix_layout(d);
    let (p_row, p_col) = split_point(point);
    let a = eq_table(&p_row);
    let b = eq_table(&p_col);

    // w = a^T · M  (the eq-weighted row combination), blind follows suit
    let data = t.data();
    let mut w = vec![S::<G>::ZERO; cols];
    for r in 0..rows {
        let ar = a[r];
        if ar.is_zero() {
            continue;
        }
        let row = &data[r * cols..(r + 1) * cols];
        for (slot, x) in w.iter_mut().zip(row) {
            *slot += ar * *x;
        }
    }
    let mut blind: S<G> = S::<G>::ZERO;
    for (ar, s) in a.iter().zip(&blinders.rows) {
        blind += *ar * *s;
    }
    let claimed_value: S<G> = w.iter().zip(&b).map(|(x, y)| *x * *y).sum();
    transcript.absorb_scalar(b"eval-claim", &claimed_value);

    let mut g = pp.gens[..cols].to_vec();
    let mut b_fold = b;
    let mut w_fold = w;
    let mut l_points = Vec::new();
    let mut r_points = Vec::new();

    while w_fold.len() > 1 {
        let half = w_fold.len() / 2;
        let (w_l, w_r) = w_fold.split_at(half);
        let (b_l, b_r) = b_fold.split_at(half);
        let (g_l, g_r) = g.split_at(half);

        let c_l: S<G> = w_l.iter().zip(b_r).map(|(x, y)| *x * *y).sum();
        let c_r: S<G> = w_r.iter().zip(b_l).map(|(x, y)| *x * *y).sum();
        let s_l = S::<G>::random(rng);
        let s_r = S::<G>::random(rng);
        let l = G::msm(w_l, g_r) + pp.ip_gen.scalar_mul(&c_l) + pp.blinding_gen.scalar_mul(&s_l);
        let r = G::msm(w_r, g_l) + pp.ip_gen.scalar_mul(&c_r) + pp.blinding_gen.scalar_mul(&s_r);
        transcript.absorb_point(b"ipa-l", &l);
        transcript.absorb_point(b"ipa-r", &r);
        let x: S<G> = transcript.challenge_nonzero(b"ipa-x");
        let xi = x.inverse().expect("nonzero");

        let mut w_next = Vec::with_capacity(half);
        let mut b_next = Vec::with_capacity(half);
        let mut g_next = Vec::with_capacity(half);
        for i in 0..half {
            w_next.push(x * w_l[i] + xi * w_r[i]);
            b_next.push(xi * b_l[i] + x * b_r[i]);
            g_next.push(g_l[i].scalar_mul(&xi) + g_r[i].scalar_mul(&x));
        }
        blind += x * x * s_l + xi * xi * s_r;
        w_fold = w_next;
        b_fold = b_next;
        g = g_next;
        l_points.push(l);
        r_points.push(r);
    }

    transcript.absorb_scalar(b"ipa-final-w", &w_fold[0]);
    transcript.absorb_scalar(b"ipa-final-s", &blind);
    Ok(EvalProof {
        claimed_value,
        l_points,
        r_points,
        final_w: w_fold[0],
        final_blind: blind,
    })
}

/// Checks an evaluation proof against a commitment. `Err(Reject)` means the
/// proof is invalid; decode-level problems surface as `Err(Decode)`.
pub fn verify_eval<G: GroupElement>(
    proof: &EvalProof<G>,
    commitment: &TensorCommitment<G>,
    point: &[G::Scalar],
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
) -> Result<()> {
    type S<G> = <G as GroupElement>::Scalar;
    let d = point.len();
    if d > pp.max_log_dim as usize {
        return Err(ZkError::Capacity("point exceeds key capacity".into()));
    }
    let (rows, cols) = matrix_layout(d);
    if commitment.rows.len() != rows {
        return Err(ZkError::decode(format!(
            "commitment has {} rows, layout wants {rows}",
            commitment.rows.len()
        )));
    }
    let folds = (cols as u64).trailing_zeros() as usize;
    if proof.l_points.len() != folds || proof.r_points.len() != folds {
        return Err(ZkError::decode("wrong number of folding rounds"));
    }

    let (p_row, p_col) = split_point(point);
    let a = eq_table(&p_row);
    let b = eq_table(&p_col);

    // C* = Σ a_r · C_r, then P = C* + y·Q
    let c_star = group_msm(&a, &commitment.rows)?;
    transcript.absorb_scalar(b"eval-claim", &proof.claimed_value);
    let mut p_acc = c_star + pp.ip_gen.scalar_mul(&proof.claimed_value);

    let mut challenges = Vec::with_capacity(folds);
    for (l, r) in proof.l_points.iter().zip(&proof.r_points) {
        transcript.absorb_point(b"ipa-l", l);
        transcript.absorb_point(b"ipa-r", r);
        let x: S<G> = transcript.challenge_nonzero(b"ipa-x");
        challenges.push(x);
    }

    // fold b and accumulate generator coefficients without folding points
    let mut b_fold = b;
    for &x in &challenges {
        let xi = x.inverse().expect("nonzero");
        let half = b_fold.len() / 2;
        let (b_l, b_r) = b_fold.split_at(half);
        b_fold = b_l
            .iter()
            .zip(b_r)
            .map(|(lo, hi)| xi * *lo + x * *hi)
            .collect();
    }
    let mut g_coeffs = vec![S::<G>::ONE; cols];
    for (k, &x) in challenges.iter().enumerate() {
        let xi = x.inverse().expect("nonzero");
        for (i, c) in g_coeffs.iter_mut().enumerate() {
            let bit = (i >> (folds - 1 - k)) & 1;
            *c *= if bit == 1 { x } else { xi };
        }
    }
    let g_final = group_msm(&g_coeffs, &pp.gens[..cols])?;

    for (&x, (l, r)) in challenges
        .iter()
        .zip(proof.l_points.iter().zip(&proof.r_points))
    {
        let xi = x.inverse().expect("nonzero");
        p_acc += l.scalar_mul(&(x * x)) + r.scalar_mul(&(xi * xi));
    }

    transcript.absorb_scalar(b"ipa-final-w", &proof.final_w);
    transcript.absorb_scalar(b"ipa-final-s", &proof.final_blind);

    let expect = g_final.scalar_mul(&proof.final_w)
        + pp.ip_gen.scalar_mul(&(proof.final_w * b_fold[0]))
        + pp.blinding_gen.scalar_mul(&proof.final_blind);
    if p_acc != expect {
        return Err(ZkError::reject("evaluation proof final check failed"));
    }
    Ok(())
}

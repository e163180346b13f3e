//! Parallel lookup argument for tensors: proves every element of a secret
//! tensor S lies in a public table T, via the rational-function identity
//!
//!     Σ_i 1/(X + S_i) = Σ_j m_j / (X + T_j)
//!
//! checked at a random point β, with the elementwise inversions
//! A = (β + S)^(-1), B = (β + T)^(-1) certified by one degree-3 sumcheck
//! over the combined D-sized domain (the N-sized table tensors repeat
//! across the D/N blocks) and five proofs of evaluation.

use std::collections::HashMap;

use rand::RngCore;

use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Result, ZkError};
use crate::field::{batch_inverse, FieldElement};
use crate::group::GroupElement;
use crate::mle::{eq_eval, eq_table};
use crate::pedersen::{
    commit, matrix_layout, prove_eval, verify_eval, Blinders, EvalProof, PublicParams,
    TensorCommitment,
};
use crate::sumcheck::{sumcheck_prove, sumcheck_verify, SumcheckProof};
use crate::tensor::Tensor;
use crate::transcript::Transcript;

const MAX_BETA_RETRIES: u32 = 64;

/// A public table with its (non-hiding) commitment.
#[derive(Clone, Debug)]
pub struct LookupTable<G: GroupElement> {
    pub entries: Tensor<G::Scalar>,
    pub commitment: TensorCommitment<G>,
}

impl<G: GroupElement> LookupTable<G> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Homomorphic pairing of an input table with an output table:
    /// entries T_X + α·T_Y, commitment combined without re-committing.
    pub fn combine(&self, other: &Self, alpha: G::Scalar) -> Result<Self> {
        Ok(LookupTable {
            entries: self.entries.add_scaled(&other.entries, alpha)?,
            commitment: self.commitment.add_scaled(&other.commitment, &alpha)?,
        })
    }
}

/// Commits a table with zero blinding (no hiding required: both parties
/// know T). Values are padded to a power of two by repeating the first
/// entry, which leaves the multiset semantics intact.
pub fn tlookup_setup<G: GroupElement>(
    values: &[G::Scalar],
    pp: &PublicParams<G>,
) -> Result<LookupTable<G>> {
    if values.is_empty() {
        return Err(ZkError::Param("empty lookup table".into()));
    }
    let n = values.len().next_power_of_two();
    let mut data = values.to_vec();
    data.resize(n, values[0]);
    let entries = Tensor::new(vec![n], data, 0)?;
    let (rows, _) = matrix_layout(entries.num_vars());
    let commitment = commit(&entries, &Blinders::zero(rows), pp)?;
    Ok(LookupTable { entries, commitment })
}

/// m_i = |{j : S_j = T_i}|, with duplicate table entries folded onto their
/// first occurrence so the rational identity keeps its meaning. Fails with
/// the offending index when some S_j is absent from T.
pub fn compute_multiplicities<F: FieldElement>(
    s: &Tensor<F>,
    table: &Tensor<F>,
) -> Result<Tensor<F>> {
    let mut first_index: HashMap<Vec<u8>, usize> = HashMap::with_capacity(table.len());
    for (i, v) in table.data().iter().enumerate() {
        first_index.entry(v.to_bytes()).or_insert(i);
    }
    let mut counts = vec![0u64; table.len()];
    for (j, v) in s.data().iter().enumerate() {
        match first_index.get(&v.to_bytes()) {
            Some(&i) => counts[i] += 1,
            None => return Err(ZkError::NotInTable { index: j }),
        }
    }
    let data = counts.iter().map(|&c| F::from_u64(c)).collect();
    Tensor::new(vec![table.len()], data, 0)
}

/// Best-effort multiplicities for a dishonest run: out-of-table elements are
/// simply not counted. Used by soundness tests and tamper trials.
pub fn compute_multiplicities_lossy<F: FieldElement>(
    s: &Tensor<F>,
    table: &Tensor<F>,
) -> Tensor<F> {
    let mut first_index: HashMap<Vec<u8>, usize> = HashMap::with_capacity(table.len());
    for (i, v) in table.data().iter().enumerate() {
        first_index.entry(v.to_bytes()).or_insert(i);
    }
    let mut counts = vec![0u64; table.len()];
    for v in s.data().iter() {
        if let Some(&i) = first_index.get(&v.to_bytes()) {
            counts[i] += 1;
        }
    }
    let data = counts.iter().map(|&c| F::from_u64(c)).collect();
    Tensor::new(vec![table.len()], data, 0).expect("table length is a power of two")
}

/// Pads lookup operand values up to at least `target_len` (and a power of
/// two) with a sentinel drawn from the table, so that N divides D.
pub fn pad_for_table<F: FieldElement>(values: &[F], target_len: usize, sentinel: F) -> Vec<F> {
    let mut out = values.to_vec();
    let len = out.len().max(target_len).next_power_of_two();
    out.resize(len, sentinel);
    out
}

/// The wire form of one lookup instance: [m], [A], [B] commitments, the
/// combined sumcheck, then the five evaluation proofs, in fixed order.
#[derive(Clone, Debug)]
pub struct TlookupFragment<G: GroupElement> {
    pub beta_retries: u32,
    pub com_m: TensorCommitment<G>,
    pub com_a: TensorCommitment<G>,
    pub com_b: TensorCommitment<G>,
    pub sumcheck: SumcheckProof<G::Scalar>,
    pub eval_a: EvalProof<G>,
    pub eval_b: EvalProof<G>,
    pub eval_s: EvalProof<G>,
    pub eval_m: EvalProof<G>,
    pub eval_t: EvalProof<G>,
}

impl<G: GroupElement> TlookupFragment<G> {
    pub fn write_into(&self, w: &mut ByteWriter) {
        w.write_u32(self.beta_retries);
        self.com_m.write_into(w);
        self.com_a.write_into(w);
        self.com_b.write_into(w);
        self.sumcheck.write_into(w);
        self.eval_a.write_into(w);
        self.eval_b.write_into(w);
        self.eval_s.write_into(w);
        self.eval_m.write_into(w);
        self.eval_t.write_into(w);
    }

    pub fn read_from(r: &mut ByteReader<'_>) -> Result<Self> {
        Ok(TlookupFragment {
            beta_retries: r.read_u32()?,
            com_m: TensorCommitment::read_from(r)?,
            com_a: TensorCommitment::read_from(r)?,
            com_b: TensorCommitment::read_from(r)?,
            sumcheck: SumcheckProof::read_from(r)?,
            eval_a: EvalProof::read_from(r)?,
            eval_b: EvalProof::read_from(r)?,
            eval_s: EvalProof::read_from(r)?,
            eval_m: EvalProof::read_from(r)?,
            eval_t: EvalProof::read_from(r)?,
        })
    }
}

fn check_shapes(d: usize, n: usize) -> Result<()> {
    // both are powers of two, so N | D follows from N <= D
    if n > d {
        return Err(ZkError::shape(format!(
            "table of {n} entries exceeds tensor of {d}; pad the tensor first"
        )));
    }
    Ok(())
}

/// Draws β, re-salting the transcript whenever the challenge collides with a
/// pole of either side. The retry count travels in the fragment so the
/// verifier replays the identical derivation.
fn derive_beta_prover<F: FieldElement>(
    transcript: &mut Transcript,
    s: &[F],
    t: &[F],
) -> Result<(F, u32)> {
    let mut retries = 0u32;
    loop {
        let beta: F = transcript.challenge_nonzero(b"tlu-beta");
        let collides = s.iter().chain(t.iter()).any(|&x| beta + x == F::ZERO);
        if !collides {
            return Ok((beta, retries));
        }
        if retries >= MAX_BETA_RETRIES {
            return Err(ZkError::ChallengeCollision { retries });
        }
        transcript.absorb_u64(b"tlu-beta-retry", retries as u64);
        retries += 1;
    }
}

fn derive_beta_verifier<F: FieldElement>(
    transcript: &mut Transcript,
    retries: u32,
) -> Result<F> {
    if retries > MAX_BETA_RETRIES {
        return Err(ZkError::decode("implausible beta retry count"));
    }
    let mut beta: F = transcript.challenge_nonzero(b"tlu-beta");
    for r in 0..retries {
        transcript.absorb_u64(b"tlu-beta-retry", r as u64);
        beta = transcript.challenge_nonzero(b"tlu-beta");
    }
    Ok(beta)
}

/// Tiles an N-sized table across the D-sized domain (D/N repeated blocks).
fn tile<F: FieldElement>(block: &[F], d: usize) -> Vec<F> {
    let mut out = Vec::with_capacity(d);
    while out.len() < d {
        out.extend_from_slice(block);
    }
    out
}

// handle order: [A, eq_u, S, B, eq_lo, T, m]
fn combined_rule<F: FieldElement>(alpha: F, beta: F, nd_inv: F) -> impl Fn(&[F]) -> F + Sync {
    let alpha_sq = alpha * alpha;
    move |v: &[F]| {
        let lhs = v[0] * (alpha * v[1] * (v[2] + beta) + F::ONE);
        let rhs = nd_inv * v[3] * (alpha_sq * v[4] * (v[5] + beta) - v[6]);
        lhs + rhs
    }
}

/// Protocol core shared by the honest and adversarial provers: `m` is taken
/// as given, and pole hits in the inversions produce zero entries instead of
/// aborting (an honest β never hits a pole).
pub fn tlookup_prove_with_multiplicities<G: GroupElement, R: RngCore>(
    s: &Tensor<G::Scalar>,
    s_blinders: &Blinders<G::Scalar>,
    m: &Tensor<G::Scalar>,
    table: &LookupTable<G>,
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
    rng: &mut R,
) -> Result<TlookupFragment<G>> {
    type S<G> = <G as GroupElement>::Scalar;
    let d = s.len();
    let n = table.len();
    check_shapes(d, n)?;
    if m.len() != n {
        return Err(ZkError::shape("multiplicity vector must match the table"));
    }
    let log_d = d.trailing_zeros() as usize;
    let log_n = n.trailing_zeros() as usize;

    // [m] is a prover secret (it leaks the histogram of S): hiding commitment
    let (m_rows, _) = matrix_layout(m.num_vars());
    let m_blinders = Blinders::random(m_rows, rng);
    let com_m = commit(m, &m_blinders, pp)?;
    transcript.absorb_points(b"tlu-m", &com_m.rows);

    let (beta, beta_retries) =
        derive_beta_prover::<S<G>>(transcript, s.data(), table.entries.data())?;

    let invert_or_zero = |values: Vec<S<G>>| -> Vec<S<G>> {
        match batch_inverse(&values) {
            Ok(inv) => inv,
            Err(_) => values
                .iter()
                .map(|v| v.inverse().unwrap_or(S::<G>::ZERO))
                .collect(),
        }
    };
    let a_data = invert_or_zero(s.data().iter().map(|&x| beta + x).collect());
    let b_data = invert_or_zero(table.entries.data().iter().map(|&x| beta + x).collect());
    let a = Tensor::new(vec![d], a_data, 0)?;
    let b = Tensor::new(vec![n], b_data, 0)?;

    let (a_rows, _) = matrix_layout(a.num_vars());
    let a_blinders = Blinders::random(a_rows, rng);
    let com_a = commit(&a, &a_blinders, pp)?;
    // B is publicly derivable from T and β: no hiding needed
    let b_blinders = Blinders::zero(matrix_layout(b.num_vars()).0);
    let com_b = commit(&b, &b_blinders, pp)?;
    transcript.absorb_points(b"tlu-a", &com_a.rows);
    transcript.absorb_points(b"tlu-b", &com_b.rows);

    let u: Vec<S<G>> = transcript.challenge_vec(b"tlu-u", log_d);
    let alpha: S<G> = transcript.challenge(b"tlu-alpha");
    let u_lo = u[log_d - log_n..].to_vec();
    let handles = vec![
        a.data().to_vec(),
        eq_table(&u),
        s.data().to_vec(),
        tile(b.data(), d),
        tile(&eq_table(&u_lo), d),
        tile(table.entries.data(), d),
        tile(m.data(), d),
    ];
    let nd_inv = S::<G>::from_u64(n as u64)
        * S::<G>::from_u64(d as u64).inverse().expect("nonzero domain");
    let rule = combined_rule(alpha, beta, nd_inv);
    let claim = alpha + alpha * alpha;
    let sumcheck = sumcheck_prove(claim, 3, handles, &rule, transcript);

    let w = sumcheck.final_point.clone();
    let w_lo = w[log_d - log_n..].to_vec();

    let eval_a = prove_eval(&a, &a_blinders, &w, pp, transcript, rng)?;
    let eval_b = prove_eval(&b, &b_blinders, &w_lo, pp, transcript, rng)?;
    let eval_s = prove_eval(s, s_blinders, &w, pp, transcript, rng)?;
    let eval_m = prove_eval(m, &m_blinders, &w_lo, pp, transcript, rng)?;
    let table_blinders = Blinders::zero(matrix_layout(table.entries.num_vars()).0);
    let eval_t = prove_eval(&table.entries, &table_blinders, &w_lo, pp, transcript, rng)?;

    Ok(TlookupFragment {
        beta_retries,
        com_m,
        com_a,
        com_b,
        sumcheck,
        eval_a,
        eval_b,
        eval_s,
        eval_m,
        eval_t,
    })
}

/// Honest prover: computes the exact multiplicities (early NotInTable error
/// if S ⊄ T) and runs the protocol.
pub fn tlookup_prove<G: GroupElement, R: RngCore>(
    s: &Tensor<G::Scalar>,
    s_blinders: &Blinders<G::Scalar>,
    table: &LookupTable<G>,
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
    rng: &mut R,
) -> Result<TlookupFragment<G>> {
    let m = compute_multiplicities(s, &table.entries)?;
    tlookup_prove_with_multiplicities(s, s_blinders, &m, table, pp, transcript, rng)
}

/// Adversarial prover for soundness trials: proceeds with best-effort
/// multiplicities even when S ⊄ T. The resulting fragment must be rejected.
pub fn tlookup_prove_unchecked<G: GroupElement, R: RngCore>(
    s: &Tensor<G::Scalar>,
    s_blinders: &Blinders<G::Scalar>,
    table: &LookupTable<G>,
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
    rng: &mut R,
) -> Result<TlookupFragment<G>> {
    let m = compute_multiplicities_lossy(s, &table.entries);
    tlookup_prove_with_multiplicities(s, s_blinders, &m, table, pp, transcript, rng)
}

/// Verifies one lookup fragment against the commitment of S and the table.
pub fn tlookup_verify<G: GroupElement>(
    fragment: &TlookupFragment<G>,
    s_num_vars: usize,
    s_com: &TensorCommitment<G>,
    table: &LookupTable<G>,
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
) -> Result<()> {
    type S<G> = <G as GroupElement>::Scalar;
    let d = 1usize << s_num_vars;
    let n = table.len();
    check_shapes(d, n)?;
    let log_d = s_num_vars;
    let log_n = n.trailing_zeros() as usize;

    transcript.absorb_points(b"tlu-m", &fragment.com_m.rows);
    let beta: S<G> = derive_beta_verifier(transcript, fragment.beta_retries)?;
    transcript.absorb_points(b"tlu-a", &fragment.com_a.rows);
    transcript.absorb_points(b"tlu-b", &fragment.com_b.rows);

    let u: Vec<S<G>> = transcript.challenge_vec(b"tlu-u", log_d);
    let alpha: S<G> = transcript.challenge(b"tlu-alpha");
    let u_lo = u[log_d - log_n..].to_vec();
    let claim = alpha + alpha * alpha;

    let vs = sumcheck_verify(&fragment.sumcheck, log_d, 3, claim, transcript)?;
    if vs.final_claims.len() != 7 {
        return Err(ZkError::reject("lookup sumcheck must carry 7 final claims"));
    }
    let w = &vs.point;
    let w_lo = w[log_d - log_n..].to_vec();

    // the two eq handles are verifier-computable
    if vs.final_claims[1] != eq_eval(&u, w)? {
        return Err(ZkError::reject("eq(u, w) claim mismatch"));
    }
    if vs.final_claims[4] != eq_eval(&u_lo, &w_lo)? {
        return Err(ZkError::reject("eq(u_lo, w_lo) claim mismatch"));
    }
    let nd_inv = S::<G>::from_u64(n as u64)
        * S::<G>::from_u64(d as u64).inverse().expect("nonzero");
    let rule = combined_rule(alpha, beta, nd_inv);
    if rule(&vs.final_claims) != vs.reduced_value {
        return Err(ZkError::reject("lookup final combination mismatch"));
    }

    // claimed evaluation values must equal the sumcheck's final claims
    let pairs: [(&EvalProof<G>, S<G>); 5] = [
        (&fragment.eval_a, vs.final_claims[0]),
        (&fragment.eval_b, vs.final_claims[3]),
        (&fragment.eval_s, vs.final_claims[2]),
        (&fragment.eval_m, vs.final_claims[6]),
        (&fragment.eval_t, vs.final_claims[5]),
    ];
    for (proof, expect) in &pairs {
        if proof.claimed_value != *expect {
            return Err(ZkError::reject("evaluation claim diverges from sumcheck"));
        }
    }
    verify_eval(&fragment.eval_a, &fragment.com_a, w, pp, transcript)?;
    verify_eval(&fragment.eval_b, &fragment.com_b, &w_lo, pp, transcript)?;
    verify_eval(&fragment.eval_s, s_com, w, pp, transcript)?;
    verify_eval(&fragment.eval_m, &fragment.com_m, &w_lo, pp, transcript)?;
    verify_eval(&fragment.eval_t, &table.commitment, &w_lo, pp, transcript)?;
    Ok(())
}

/// Proves Y = f(X) elementwise from a paired input/output table, by reducing
/// to one plain lookup on X + αY ⊂ T_X + αT_Y for a transcript-derived α.
/// The commitments of X and Y are combined homomorphically.
#[allow(clippy::too_many_arguments)]
pub fn function_lookup_prove<G: GroupElement, R: RngCore>(
    x: &Tensor<G::Scalar>,
    x_blinders: &Blinders<G::Scalar>,
    y: &Tensor<G::Scalar>,
    y_blinders: &Blinders<G::Scalar>,
    table_x: &LookupTable<G>,
    table_y: &LookupTable<G>,
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
    rng: &mut R,
    honest: bool,
) -> Result<TlookupFragment<G>> {
    let alpha: G::Scalar = transcript.challenge(b"flu-alpha");
    let combined = x.add_scaled(y, alpha)?;
    let combined_blinders = x_blinders.add_scaled(y_blinders, alpha)?;
    let combined_table = table_x.combine(table_y, alpha)?;
    let m = if honest {
        compute_multiplicities(&combined, &combined_table.entries)?
    } else {
        compute_multiplicities_lossy(&combined, &combined_table.entries)
    };
    tlookup_prove_with_multiplicities(
        &combined,
        &combined_blinders,
        &m,
        &combined_table,
        pp,
        transcript,
        rng,
    )
}

/// Verifier counterpart: recombines the commitments with the same α.
#[allow(clippy::too_many_arguments)]
pub fn function_lookup_verify<G: GroupElement>(
    fragment: &TlookupFragment<G>,
    num_vars: usize,
    x_com: &TensorCommitment<G>,
    y_com: &TensorCommitment<G>,
    table_x: &LookupTable<G>,
    table_y: &LookupTable<G>,
    pp: &PublicParams<G>,
    transcript: &mut Transcript,
) -> Result<()> {
    let alpha: G::Scalar = transcript.challenge(b"flu-alpha");
    let combined_com = x_com.add_scaled(y_com, &alpha)?;
    let combined_table = table_x.combine(table_y, alpha)?;
    tlookup_verify(
        fragment,
        num_vars,
        &combined_com,
        &combined_table,
        pp,
        transcript,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F61, Fr255};
    use crate::group::{AddGroup61, Ristretto};
    use crate::pedersen::keygen;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    type G = Ristretto;
    type F = Fr255;

    fn pp_default(max: u32) -> PublicParams<G> {
        keygen(max, b"lookup-tests")
    }

    fn commit_s(
        s: &Tensor<F>,
        pp: &PublicParams<G>,
        rng: &mut ChaCha20Rng,
    ) -> (TensorCommitment<G>, Blinders<F>) {
        let (rows, _) = matrix_layout(s.num_vars());
        let blinders = Blinders::random(rows, rng);
        let com = commit(s, &blinders, pp).unwrap();
        (com, blinders)
    }

    #[test]
    fn multiplicities_basic_cases() {
        let s: Tensor<F61> = Tensor::from_i64(vec![4], &[1, 2, 2, 1], 0).unwrap();
        let t: Tensor<F61> = Tensor::from_i64(vec![2], &[1, 2], 0).unwrap();
        let m = compute_multiplicities(&s, &t).unwrap();
        assert_eq!(m.data(), &[F61::from_u64(2), F61::from_u64(2)]);

        // S = T gives all ones, constant S piles onto one slot
        let m2 = compute_multiplicities(&t, &t).unwrap();
        assert_eq!(m2.data(), &[F61::ONE, F61::ONE]);
        let s3: Tensor<F61> = Tensor::from_i64(vec![4], &[1, 1, 1, 1], 0).unwrap();
        let m3 = compute_multiplicities(&s3, &t).unwrap();
        assert_eq!(m3.data(), &[F61::from_u64(4), F61::ZERO]);

        // sums to D
        assert_eq!(m.sum(), F61::from_u64(4));

        let bad: Tensor<F61> = Tensor::from_i64(vec![4], &[1, 9, 2, 1], 0).unwrap();
        match compute_multiplicities(&bad, &t) {
            Err(ZkError::NotInTable { index }) => assert_eq!(index, 1),
            other => panic!("expected NotInTable, got {other:?}"),
        }
    }

    #[test]
    fn setup_is_deterministic_and_table_dependent() {
        let pp = pp_default(8);
        let t1 = tlookup_setup::<G>(&[F::ZERO, F::ONE], &pp).unwrap();
        let t2 = tlookup_setup::<G>(&[F::ZERO, F::ONE], &pp).unwrap();
        assert_eq!(t1.commitment, t2.commitment);
        let t3 = tlookup_setup::<G>(&[F::ONE, F::ZERO], &pp).unwrap();
        assert_ne!(t1.commitment, t3.commitment);
    }

    #[test]
    fn honest_witness_satisfies_grand_sum() {
        // Σ A_i = <m, B> for every honest witness
        let mut rng = ChaCha20Rng::seed_from_u64(30);
        for _ in 0..20 {
            let t_vals: Vec<F61> = (0..8u64).map(|i| F61::from_u64(i * 3 + 1)).collect();
            let s_vals: Vec<F61> = (0..64)
                .map(|_| t_vals[rng.gen_range(0..t_vals.len())])
                .collect();
            let s = Tensor::new(vec![64], s_vals, 0).unwrap();
            let t = Tensor::new(vec![8], t_vals, 0).unwrap();
            let m = compute_multiplicities(&s, &t).unwrap();
            let beta = F61::random(&mut rng);
            let a =
                batch_inverse(&s.data().iter().map(|&x| beta + x).collect::<Vec<_>>()).unwrap();
            let b =
                batch_inverse(&t.data().iter().map(|&x| beta + x).collect::<Vec<_>>()).unwrap();
            let lhs: F61 = a.iter().copied().sum();
            let rhs: F61 = m.data().iter().zip(&b).map(|(x, y)| *x * *y).sum();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn spec_instance_proves_and_verifies() {
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let pp = pp_default(6);
        let table = tlookup_setup::<G>(&[F::from_u64(1), F::from_u64(2)], &pp).unwrap();
        let s: Tensor<F> = Tensor::from_i64(vec![4], &[1, 2, 2, 1], 0).unwrap();
        let (s_com, s_blinders) = commit_s(&s, &pp, &mut rng);

        let mut tp = Transcript::new(b"tlu");
        let frag = tlookup_prove(&s, &s_blinders, &table, &pp, &mut tp, &mut rng).unwrap();
        assert_eq!(frag.beta_retries, 0);
        let mut tv = Transcript::new(b"tlu");
        tlookup_verify(&frag, 2, &s_com, &table, &pp, &mut tv).unwrap();
    }

    #[test]
    fn random_inclusion_verifies_d_1024_n_64() {
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        let pp = pp_default(10);
        let t_vals: Vec<F> = (0..64u64).map(|i| F::from_u64(i * 7 + 3)).collect();
        let table = tlookup_setup::<G>(&t_vals, &pp).unwrap();
        let s_vals: Vec<F> = (0..1024).map(|_| t_vals[rng.gen_range(0..64)]).collect();
        let s = Tensor::new(vec![1024], s_vals, 0).unwrap();
        let (s_com, s_blinders) = commit_s(&s, &pp, &mut rng);

        let mut tp = Transcript::new(b"tlu");
        let frag = tlookup_prove(&s, &s_blinders, &table, &pp, &mut tp, &mut rng).unwrap();
        let mut tv = Transcript::new(b"tlu");
        tlookup_verify(&frag, 10, &s_com, &table, &pp, &mut tv).unwrap();
    }

    #[test]
    fn tampered_multiplicities_reject() {
        let mut rng = ChaCha20Rng::seed_from_u64(33);
        let pp = pp_default(8);
        let t_vals: Vec<F> = (0..16u64).map(F::from_u64).collect();
        let table = tlookup_setup::<G>(&t_vals, &pp).unwrap();
        let s_vals: Vec<F> = (0..256).map(|_| t_vals[rng.gen_range(0..16)]).collect();
        let s = Tensor::new(vec![256], s_vals, 0).unwrap();
        let (s_com, s_blinders) = commit_s(&s, &pp, &mut rng);

        let mut m = compute_multiplicities(&s, &table.entries).unwrap();
        m.data_mut()[0] += F::ONE;
        let mut tp = Transcript::new(b"tlu");
        let frag =
            tlookup_prove_with_multiplicities(&s, &s_blinders, &m, &table, &pp, &mut tp, &mut rng)
                .unwrap();
        let mut tv = Transcript::new(b"tlu");
        assert!(tlookup_verify(&frag, 8, &s_com, &table, &pp, &mut tv).is_err());
    }

    #[test]
    fn out_of_table_element_rejects() {
        let mut rng = ChaCha20Rng::seed_from_u64(34);
        let pp = pp_default(8);
        let t_vals: Vec<F> = (0..16u64).map(|i| F::from_u64(i + 100)).collect();
        let table = tlookup_setup::<G>(&t_vals, &pp).unwrap();
        let mut s_vals: Vec<F> = (0..256).map(|_| t_vals[rng.gen_range(0..16)]).collect();
        s_vals[77] = F::from_u64(9999); // not in table
        let s = Tensor::new(vec![256], s_vals, 0).unwrap();
        let (s_com, s_blinders) = commit_s(&s, &pp, &mut rng);

        let mut tp = Transcript::new(b"tlu");
        let frag =
            tlookup_prove_unchecked(&s, &s_blinders, &table, &pp, &mut tp, &mut rng).unwrap();
        let mut tv = Transcript::new(b"tlu");
        assert!(tlookup_verify(&frag, 8, &s_com, &table, &pp, &mut tv).is_err());
    }

    #[test]
    fn wrong_table_commitment_rejects() {
        let mut rng = ChaCha20Rng::seed_from_u64(35);
        let pp = pp_default(6);
        let table = tlookup_setup::<G>(&[F::from_u64(5), F::from_u64(6)], &pp).unwrap();
        let other = tlookup_setup::<G>(&[F::from_u64(5), F::from_u64(7)], &pp).unwrap();
        let s: Tensor<F> = Tensor::from_i64(vec![4], &[5, 6, 6, 5], 0).unwrap();
        let (s_com, s_blinders) = commit_s(&s, &pp, &mut rng);
        let mut tp = Transcript::new(b"tlu");
        let frag = tlookup_prove(&s, &s_blinders, &table, &pp, &mut tp, &mut rng).unwrap();
        let mut tv = Transcript::new(b"tlu");
        assert!(tlookup_verify(&frag, 2, &s_com, &other, &pp, &mut tv).is_err());
    }

    #[test]
    fn function_lookup_square_example() {
        let mut rng = ChaCha20Rng::seed_from_u64(36);
        let pp = pp_default(6);
        let tx = tlookup_setup::<G>(&[0, 1, 2, 3].map(F::from_u64), &pp).unwrap();
        let ty = tlookup_setup::<G>(&[0, 1, 4, 9].map(F::from_u64), &pp).unwrap();
        let x: Tensor<F> = Tensor::from_i64(vec![4], &[2, 3, 1, 0], 0).unwrap();
        let y: Tensor<F> = Tensor::from_i64(vec![4], &[4, 9, 1, 0], 0).unwrap();
        let (x_com, x_blinders) = commit_s(&x, &pp, &mut rng);
        let (y_com, y_blinders) = commit_s(&y, &pp, &mut rng);

        let mut tp = Transcript::new(b"flu");
        let frag = function_lookup_prove(
            &x, &x_blinders, &y, &y_blinders, &tx, &ty, &pp, &mut tp, &mut rng, true,
        )
        .unwrap();
        let mut tv = Transcript::new(b"flu");
        function_lookup_verify(&frag, 2, &x_com, &y_com, &tx, &ty, &pp, &mut tv).unwrap();

        // tamper: y[0] -> 5 breaks the pairing
        let mut y_bad = y.clone();
        y_bad.data_mut()[0] = F::from_u64(5);
        let (y_bad_com, y_bad_blinders) = commit_s(&y_bad, &pp, &mut rng);
        let mut tp2 = Transcript::new(b"flu");
        let frag2 = function_lookup_prove(
            &x,
            &x_blinders,
            &y_bad,
            &y_bad_blinders,
            &tx,
            &ty,
            &pp,
            &mut tp2,
            &mut rng,
            false,
        )
        .unwrap();
        let mut tv2 = Transcript::new(b"flu");
        assert!(
            function_lookup_verify(&frag2, 2, &x_com, &y_bad_com, &tx, &ty, &pp, &mut tv2)
                .is_err()
        );
    }

    #[test]
    fn identity_function_lookup_reduces_to_membership() {
        let mut rng = ChaCha20Rng::seed_from_u64(37);
        let pp = pp_default(6);
        let tx = tlookup_setup::<G>(&[3, 5, 7, 9].map(F::from_u64), &pp).unwrap();
        let x: Tensor<F> = Tensor::from_i64(vec![4], &[5, 3, 9, 7], 0).unwrap();
        let (x_com, x_blinders) = commit_s(&x, &pp, &mut rng);
        let mut tp = Transcript::new(b"flu");
        let frag = function_lookup_prove(
            &x, &x_blinders, &x, &x_blinders, &tx, &tx, &pp, &mut tp, &mut rng, true,
        )
        .unwrap();
        let mut tv = Transcript::new(b"flu");
        function_lookup_verify(&frag, 2, &x_com, &x_com, &tx, &tx, &pp, &mut tv).unwrap();
    }

    #[test]
    fn small_field_protocol_runs_end_to_end() {
        // the whole stack must also run over the oracle field
        let mut rng = ChaCha20Rng::seed_from_u64(38);
        let pp: PublicParams<AddGroup61> = keygen(6, b"small");
        let t_vals: Vec<F61> = [2u64, 4, 6, 8].map(F61::from_u64).to_vec();
        let table = tlookup_setup::<AddGroup61>(&t_vals, &pp).unwrap();
        let s: Tensor<F61> = Tensor::from_i64(vec![8], &[2, 4, 4, 6, 8, 8, 2, 2], 0).unwrap();
        let (rows, _) = matrix_layout(s.num_vars());
        let s_blinders = Blinders::random(rows, &mut rng);
        let s_com = commit(&s, &s_blinders, &pp).unwrap();

        let mut tp = Transcript::new(b"tlu61");
        let frag = tlookup_prove(&s, &s_blinders, &table, &pp, &mut tp, &mut rng).unwrap();
        let mut tv = Transcript::new(b"tlu61");
        tlookup_verify(&frag, 3, &s_com, &table, &pp, &mut tv).unwrap();
    }

    #[test]
    fn serialization_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(40);
        let pp = pp_default(6);
        let table = tlookup_setup::<G>(&[F::from_u64(1), F::from_u64(2)], &pp).unwrap();
        let s: Tensor<F> = Tensor::from_i64(vec![4], &[1, 2, 2, 1], 0).unwrap();
        let (s_com, s_blinders) = commit_s(&s, &pp, &mut rng);
        let mut tp = Transcript::new(b"tlu");
        let frag = tlookup_prove(&s, &s_blinders, &table, &pp, &mut tp, &mut rng).unwrap();

        let mut w = ByteWriter::new();
        frag.write_into(&mut w);
        let bytes = w.into_bytes();
        let mut r = ByteReader::new(&bytes);
        let frag2 = TlookupFragment::<G>::read_from(&mut r).unwrap();
        r.finish().unwrap();
        let mut tv = Transcript::new(b"tlu");
        tlookup_verify(&frag2, 2, &s_com, &table, &pp, &mut tv).unwrap();
    }

    #[test]
    fn prover_work_scales_linearly_in_d() {
        // coarse O(D) check: doubling D at fixed N must stay well under 2x
        // with slack for timer noise
        let mut rng = ChaCha20Rng::seed_from_u64(39);
        let pp = pp_default(13);
        let t_vals: Vec<F> = (0..64u64).map(F::from_u64).collect();
        let table = tlookup_setup::<G>(&t_vals, &pp).unwrap();

        let mut time_for = |log_d: usize| {
            let s_vals: Vec<F> = (0..1usize << log_d)
                .map(|_| t_vals[rng.gen_range(0..64)])
                .collect();
            let s = Tensor::new(vec![1 << log_d], s_vals, 0).unwrap();
            let (rows, _) = matrix_layout(log_d);
            let s_blinders = Blinders::random(rows, &mut rng);
            let mut best = f64::INFINITY;
            for _ in 0..3 {
                let mut tp = Transcript::new(b"tlu");
                let mut rng2 = ChaCha20Rng::seed_from_u64(41);
                let start = std::time::Instant::now();
                let _ = tlookup_prove(&s, &s_blinders, &table, &pp, &mut tp, &mut rng2).unwrap();
                best = best.min(start.elapsed().as_secs_f64());
            }
            best
        };
        let t_small = time_for(12);
        let t_big = time_for(13);
        assert!(
            t_big / t_small < 4.5,
            "doubling D scaled prove time by {:.2}x",
            t_big / t_small
        );
    }
}

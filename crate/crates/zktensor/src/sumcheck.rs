//! The sumcheck protocol: proves Σ_{i ∈ {0,1}^d} f(i) = claim for f a small
//! declared combination of multilinear extensions, one variable per round.
//!
//! The engine takes working copies of the MLE tables plus a per-point
//! combination rule. Rounds bind the most significant remaining variable,
//! halving every table in place, so prover work is linear in the table size.
//! Round polynomials travel as coefficient lists with a declared degree
//! bound; verifiers reject oversized polynomials before doing any algebra.

use rayon::prelude::*;

use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Result, ZkError};
use crate::field::FieldElement;
use crate::mle::{eq_table, fold_first_var};
use crate::transcript::Transcript;

/// Dense univariate polynomial, coefficients low-to-high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F> {
    pub coeffs: Vec<F>,
}

impl<F: FieldElement> UniPoly<F> {
    pub fn evaluate(&self, x: F) -> F {
        let mut acc = F::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_zero(&self) -> F {
        self.coeffs.first().copied().unwrap_or(F::ZERO)
    }

    pub fn eval_at_one(&self) -> F {
        self.coeffs.iter().copied().sum()
    }

    /// Interpolates from evaluations at x = 0, 1, ..., evals.len()-1.
    pub fn from_evals(evals: &[F]) -> Self {
        let n = evals.len();
        let mut coeffs = vec![F::ZERO; n];
        for (j, &yj) in evals.iter().enumerate() {
            // L_j(X) = Π_{i≠j} (X - i) / (j - i)
            let mut basis = vec![F::ZERO; n];
            basis[0] = F::ONE;
            let mut deg = 0usize;
            let mut denom = F::ONE;
            for i in 0..n {
                if i == j {
                    continue;
                }
                // multiply basis by (X - i)
                let neg_i = -F::from_u64(i as u64);
                let mut next = vec![F::ZERO; deg + 2];
                for (k, &b) in basis.iter().take(deg + 1).enumerate() {
                    next[k] += b * neg_i;
                    next[k + 1] += b;
                }
                deg += 1;
                basis[..deg + 1].copy_from_slice(&next[..deg + 1]);
                let diff = F::from_i128(j as i128 - i as i128);
                denom *= diff;
            }
            let scale = yj * denom.inverse().expect("distinct nodes");
            for (c, b) in coeffs.iter_mut().zip(&basis) {
                *c += scale * *b;
            }
        }
        UniPoly { coeffs }
    }
}

/// Transcript of one sumcheck execution. `final_point` is the challenge
/// vector (most significant variable first), `final_claims` are the values
/// of every handle's MLE at that point, in handle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumcheckProof<F> {
    pub round_polys: Vec<UniPoly<F>>,
    pub final_point: Vec<F>,
    pub final_claims: Vec<F>,
}

impl<F: FieldElement> SumcheckProof<F> {
    pub fn num_rounds(&self) -> usize {
        self.round_polys.len()
    }

    pub fn write_into(&self, w: &mut ByteWriter) {
        w.write_u32(self.round_polys.len() as u32);
        for p in &self.round_polys {
            w.write_scalars(&p.coeffs);
        }
        w.write_scalars(&self.final_point);
        w.write_scalars(&self.final_claims);
    }

    pub fn read_from(r: &mut ByteReader<'_>) -> Result<Self> {
        let rounds = r.read_len(64)?;
        let mut round_polys = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            round_polys.push(UniPoly { coeffs: r.read_scalars(16)? });
        }
        let final_point = r.read_scalars(64)?;
        let final_claims = r.read_scalars(64)?;
        Ok(SumcheckProof { round_polys, final_point, final_claims })
    }
}

const PAR_THRESHOLD: usize = 1 << 12;

/// Evaluates the round polynomial of the current tables at the sample points
/// 0, 2, 3, ..., degree (the value at 1 follows from the running claim).
fn round_samples<F: FieldElement>(
    handles: &[Vec<F>],
    rule: &(dyn Fn(&[F]) -> F + Sync),
    degree: usize,
) -> Vec<F> {
    let half = handles[0].len() / 2;
    let width = handles.len();
    let eval_range = |lo: usize, hi: usize| -> Vec<F> {
        let mut acc = vec![F::ZERO; degree];
        let mut current = vec![F::ZERO; width];
        let mut step = vec![F::ZERO; width];
        for i in lo..hi {
            for (j, h) in handles.iter().enumerate() {
                current[j] = h[i];
                step[j] = h[half + i] - h[i];
            }
            acc[0] += rule(&current);
            // samples at t = 2..=degree; t = 1 is implied by the claim
            for slot in acc.iter_mut().skip(1) {
                for (c, s) in current.iter_mut().zip(&step) {
                    *c += *s;
                }
                for (c, s) in current.iter_mut().zip(&step) {
                    *c += *s;
                }
                *slot += rule(&current);
                // rewind one step so the next sample advances by exactly one
                for (c, s) in current.iter_mut().zip(&step) {
                    *c -= *s;
                }
            }
        }
        acc
    };
    if half >= PAR_THRESHOLD {
        let chunk = 1 << 10;
        (0..half)
            .into_par_iter()
            .step_by(chunk)
            .map(|lo| eval_range(lo, (lo + chunk).min(half)))
            .reduce(
                || vec![F::ZERO; degree],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    } else {
        eval_range(0, half)
    }
}

/// Runs the prover side. `handles` are equal-length power-of-two tables;
/// `rule` combines one point's values; the true hypercube sum of the rule
/// must equal `claim` for the resulting proof to verify.
pub fn sumcheck_prove<F: FieldElement>(
    claim: F,
    degree_bound: usize,
    mut handles: Vec<Vec<F>>,
    rule: &(dyn Fn(&[F]) -> F + Sync),
    transcript: &mut Transcript,
) -> SumcheckProof<F> {
    assert!(!handles.is_empty() && degree_bound >= 1);
    let size = handles[0].len();
    assert!(size.is_power_of_two());
    for h in &handles {
        assert_eq!(h.len(), size);
    }
    let num_rounds = size.trailing_zeros() as usize;

    let mut running = claim;
    let mut round_polys = Vec::with_capacity(num_rounds);
    let mut point = Vec::with_capacity(num_rounds);
    for _ in 0..num_rounds {
        let samples = round_samples(&handles, rule, degree_bound);
        // evals at 0..=degree: [s0, running - s0, s2, ..., sdeg]
        let mut evals = Vec::with_capacity(degree_bound + 1);
        evals.push(samples[0]);
        evals.push(running - samples[0]);
        evals.extend_from_slice(&samples[1..]);
        let poly = UniPoly::from_evals(&evals);
        transcript.absorb_scalars(b"sc-poly", &poly.coeffs);
        let r: F = transcript.challenge(b"sc-r");
        for h in handles.iter_mut() {
            fold_first_var(h, r);
        }
        running = poly.evaluate(r);
        round_polys.push(poly);
        point.push(r);
    }

    let final_claims: Vec<F> = handles.iter().map(|h| h[0]).collect();
    transcript.absorb_scalars(b"sc-final", &final_claims);
    SumcheckProof { round_polys, final_point: point, final_claims }
}

/// Result of a verified sumcheck: the reduction point, the value the
/// combination rule must take there, and the prover's claimed handle values
/// (to be discharged by evaluation proofs or recomputation).
#[derive(Clone, Debug)]
pub struct VerifiedSumcheck<F> {
    pub point: Vec<F>,
    pub reduced_value: F,
    pub final_claims: Vec<F>,
}

pub fn sumcheck_verify<F: FieldElement>(
    proof: &SumcheckProof<F>,
    num_rounds: usize,
    degree_bound: usize,
    claim: F,
    transcript: &mut Transcript,
) -> Result<VerifiedSumcheck<F>> {
    if proof.round_polys.len() != num_rounds {
        return Err(ZkError::reject(format!(
            "expected {num_rounds} sumcheck rounds, got {}",
            proof.round_polys.len()
        )));
    }
    let mut running = claim;
    let mut point = Vec::with_capacity(num_rounds);
    for (i, poly) in proof.round_polys.iter().enumerate() {
        if poly.coeffs.is_empty() || poly.coeffs.len() > degree_bound + 1 {
            return Err(ZkError::reject(format!(
                "round {i} polynomial violates degree bound {degree_bound}"
            )));
        }
        if poly.eval_at_zero() + poly.eval_at_one() != running {
            return Err(ZkError::reject(format!("round {i} consistency check failed")));
        }
        transcript.absorb_scalars(b"sc-poly", &poly.coeffs);
        let r: F = transcript.challenge(b"sc-r");
        running = poly.evaluate(r);
        point.push(r);
    }
    if proof.final_point != point {
        return Err(ZkError::reject("final point does not match challenges"));
    }
    transcript.absorb_scalars(b"sc-final", &proof.final_claims);
    Ok(VerifiedSumcheck { point, reduced_value: running, final_claims: proof.final_claims.clone() })
}

/// Random-linear-combination aggregation of claims: Σ_j ρ^j · claims[j].
pub fn batch_claims<F: FieldElement>(claims: &[F], rho: F) -> F {
    let mut acc = F::ZERO;
    for &c in claims.iter().rev() {
        acc = acc * rho + c;
    }
    acc
}

/// Reduces several evaluation claims about one MLE, at different points, to
/// a single claim at a fresh point, via one degree-2 sumcheck against the
/// ρ-combined eq weight.
pub fn batch_eval_claims_prove<F: FieldElement>(
    data: &[F],
    points: &[Vec<F>],
    transcript: &mut Transcript,
) -> SumcheckProof<F> {
    assert!(!points.is_empty());
    let rho: F = transcript.challenge(b"batch-rho");
    let mut weight = vec![F::ZERO; data.len()];
    let mut coeff = F::ONE;
    for p in points {
        for (w, e) in weight.iter_mut().zip(eq_table(p)) {
            *w += coeff * e;
        }
        coeff *= rho;
    }
    let values: Vec<F> = points
        .iter()
        .map(|p| crate::mle::evaluate_mle_data(data, p).expect("shape"))
        .collect();
    let claim = batch_claims(&values, rho);
    sumcheck_prove(
        claim,
        2,
        vec![weight, data.to_vec()],
        &|vals: &[F]| vals[0] * vals[1],
        transcript,
    )
}

/// Verifier side of [`batch_eval_claims_prove`]; returns the single reduced
/// claim (point, value) on the underlying MLE.
pub fn batch_eval_claims_verify<F: FieldElement>(
    proof: &SumcheckProof<F>,
    points: &[Vec<F>],
    values: &[F],
    num_vars: usize,
    transcript: &mut Transcript,
) -> Result<(Vec<F>, F)> {
    let rho: F = transcript.challenge(b"batch-rho");
    let claim = batch_claims(values, rho);
    let vs = sumcheck_verify(proof, num_vars, 2, claim, transcript)?;
    if vs.final_claims.len() != 2 {
        return Err(ZkError::reject("claim batch must carry two final claims"));
    }
    // the weight handle is verifier-computable
    let mut expect_w = F::ZERO;
    let mut coeff = F::ONE;
    for p in points {
        expect_w += coeff * crate::mle::eq_eval(p, &vs.point)?;
        coeff *= rho;
    }
    if vs.final_claims[0] != expect_w {
        return Err(ZkError::reject("claim batch weight mismatch"));
    }
    if vs.final_claims[0] * vs.final_claims[1] != vs.reduced_value {
        return Err(ZkError::reject("claim batch final check failed"));
    }
    Ok((vs.point, vs.final_claims[1]))
}

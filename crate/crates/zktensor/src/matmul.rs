//! Specialized sumcheck for matrix multiplication: reduces a claim about
//! C̃(u, v) to claims about Ã(u, ·) and B̃(·, v) in ⌈log2 n⌉ rounds, with
//! prover work O(mn + np) — the row/column folds dominate.

use crate::error::{Result, ZkError};
use crate::field::FieldElement;
use crate::mle::{eq_table, fold_prefix, mle_evaluate};
use crate::sumcheck::{sumcheck_prove, sumcheck_verify, SumcheckProof};
use crate::tensor::Tensor;
use crate::transcript::Transcript;

#[derive(Clone, Debug)]
pub struct MatmulProof<F> {
    pub sumcheck: SumcheckProof<F>,
}

/// Claims left open after verifying a matmul sumcheck. For `C = A·B` the
/// obligations are Ã(u ⊕ w) and B̃(w ⊕ v); with `transpose_b`, B̃(v ⊕ w).
#[derive(Clone, Debug)]
pub struct MatmulObligations<F> {
    pub inner_point: Vec<F>,
    pub a_eval: F,
    pub b_eval: F,
}

fn two_dims<F: FieldElement>(t: &Tensor<F>) -> Result<(usize, usize)> {
    match t.dims() {
        [r, c] => Ok((*r, *c)),
        other => Err(ZkError::shape(format!("expected a matrix, got dims {other:?}"))),
    }
}

/// Prover side, anchored at a given output claim: proves
/// claim = Σ_k Ã(u, k) · B̃(k, v)   (or Σ_k Ã(u, k) · B̃(v, k) when
/// `transpose_b`). The claim's correctness is the caller's business; a false
/// claim yields a proof the verifier rejects.
pub fn matmul_prove_at<F: FieldElement>(
    a: &Tensor<F>,
    b: &Tensor<F>,
    transpose_b: bool,
    u: &[F],
    v: &[F],
    claim: F,
    transcript: &mut Transcript,
) -> Result<MatmulProof<F>> {
    let (m, n) = two_dims(a)?;
    let (br, bc) = two_dims(b)?;
    let inner = if transpose_b { bc } else { br };
    let outer_b = if transpose_b { br } else { bc };
    if inner != n {
        return Err(ZkError::shape(format!(
            "inner dimensions differ: a is {m}x{n}, b contributes {inner}"
        )));
    }
    if u.len() != log2(m) || v.len() != log2(outer_b) {
        return Err(ZkError::shape("matmul point length mismatch"));
    }

    // Ã(u, ·): bind the row variables of A at u.
    let a_u = fold_prefix(a.data(), u);
    // B̃(·, v): either fold rows (transposed case) or weight columns by eq(v).
    let b_v = if transpose_b {
        fold_prefix(b.data(), v)
    } else {
        let eqv = eq_table(v);
        let mut out = vec![F::ZERO; br];
        for (k, slot) in out.iter_mut().enumerate() {
            let row = &b.data()[k * bc..(k + 1) * bc];
            let mut acc = F::ZERO;
            for (x, w) in row.iter().zip(&eqv) {
                acc += *x * *w;
            }
            *slot = acc;
        }
        out
    };

    let sumcheck = sumcheck_prove(
        claim,
        2,
        vec![a_u, b_v],
        &|vals: &[F]| vals[0] * vals[1],
        transcript,
    );
    Ok(MatmulProof { sumcheck })
}

/// Verifier side for a claim anchored at (u, v): checks the sumcheck and the
/// final product, returning the two open MLE obligations.
pub fn matmul_verify_at<F: FieldElement>(
    proof: &MatmulProof<F>,
    log_inner: usize,
    claim: F,
    transcript: &mut Transcript,
) -> Result<MatmulObligations<F>> {
    let vs = sumcheck_verify(&proof.sumcheck, log_inner, 2, claim, transcript)?;
    if vs.final_claims.len() != 2 {
        return Err(ZkError::reject("matmul sumcheck must end with two claims"));
    }
    let (a_eval, b_eval) = (vs.final_claims[0], vs.final_claims[1]);
    if a_eval * b_eval != vs.reduced_value {
        return Err(ZkError::reject("matmul final product check failed"));
    }
    Ok(MatmulObligations { inner_point: vs.point, a_eval, b_eval })
}

/// Standalone instance: draws (u, v) from the transcript, anchors the claim
/// at C̃(u, v) and proves C = A·B. Returns the anchor points alongside the
/// proof so callers can discharge the obligations.
pub fn matmul_sumcheck_prove<F: FieldElement>(
    a: &Tensor<F>,
    b: &Tensor<F>,
    c: &Tensor<F>,
    transcript: &mut Transcript,
) -> Result<(MatmulProof<F>, Vec<F>, Vec<F>)> {
    let (m, _) = two_dims(a)?;
    let (_, p) = two_dims(b)?;
    let (cm, cp) = two_dims(c)?;
    if cm != m || cp != p {
        return Err(ZkError::shape("output shape mismatch"));
    }
    let u: Vec<F> = transcript.challenge_vec(b"matmul-u", log2(m));
    let v: Vec<F> = transcript.challenge_vec(b"matmul-v", log2(p));
    let point: Vec<F> = u.iter().chain(v.iter()).copied().collect();
    let claim = mle_evaluate(c, &point)?;
    let proof = matmul_prove_at(a, b, false, &u, &v, claim, transcript)?;
    Ok((proof, u, v))
}

/// Standalone verification against a public output C (the test/oracle form:
/// the verifier evaluates C̃ itself).
pub fn matmul_sumcheck_verify<F: FieldElement>(
    c: &Tensor<F>,
    log_m: usize,
    log_n: usize,
    log_p: usize,
    proof: &MatmulProof<F>,
    transcript: &mut Transcript,
) -> Result<(Vec<F>, Vec<F>, MatmulObligations<F>)> {
    let u: Vec<F> = transcript.challenge_vec(b"matmul-u", log_m);
    let v: Vec<F> = transcript.challenge_vec(b"matmul-v", log_p);
    let point: Vec<F> = u.iter().chain(v.iter()).copied().collect();
    let claim = mle_evaluate(c, &point)?;
    let ob = matmul_verify_at(proof, log_n, claim, transcript)?;
    Ok((u, v, ob))
}

pub(crate) fn log2(n: usize) -> usize {
    debug_assert!(n.is_power_of_two());
    n.trailing_zeros() as usize
}

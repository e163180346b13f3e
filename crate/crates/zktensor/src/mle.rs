//! Multilinear extensions: the eq kernel, the expanded eq table, and
//! linear-time evaluation by variable folding.
//!
//! Conventions used everywhere: a tensor of 2^d entries is a function on
//! {0,1}^d with the FIRST point coordinate addressing the most significant
//! index bit, so coordinate 0 splits the flat data into its low half
//! (coordinate = 0) and high half (coordinate = 1).

use crate::error::{Result, ZkError};
use crate::field::FieldElement;
use crate::tensor::Tensor;

/// eq(u, v) = Π_i (u_i v_i + (1-u_i)(1-v_i)); the equality indicator on
/// boolean inputs, extended multilinearly.
pub fn eq_eval<F: FieldElement>(u: &[F], v: &[F]) -> Result<F> {
    if u.len() != v.len() {
        return Err(ZkError::shape(format!(
            "eq_eval length mismatch: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    let mut acc = F::ONE;
    for (a, b) in u.iter().zip(v) {
        acc *= *a * *b + (F::ONE - *a) * (F::ONE - *b);
    }
    Ok(acc)
}

/// Expands eq(u, ·) over the whole hypercube in O(2^d): out[i] = eq(u, bits(i)).
pub fn eq_table<F: FieldElement>(u: &[F]) -> Vec<F> {
    let mut table = vec![F::ONE];
    for &coord in u {
        let mut next = Vec::with_capacity(table.len() * 2);
        for &t in &table {
            let hi = t * coord;
            next.push(t - hi);
            next.push(hi);
        }
        table = next;
    }
    table
}

/// Binds the first (most significant) variable of `data` to `r`, halving it:
/// data'[i] = data[i] + r * (data[half + i] - data[i]).
pub fn fold_first_var<F: FieldElement>(data: &mut Vec<F>, r: F) {
    let half = data.len() / 2;
    for i in 0..half {
        let low = data[i];
        let high = data[half + i];
        data[i] = low + r * (high - low);
    }
    data.truncate(half);
}

/// Evaluates the multilinear extension of `data` (length 2^d) at `point`
/// (length d) in O(2^d) total work.
pub fn evaluate_mle_data<F: FieldElement>(data: &[F], point: &[F]) -> Result<F> {
    let d = point.len();
    if data.len() != 1usize << d {
        return Err(ZkError::shape(format!(
            "mle point has {} vars but tensor has {} entries",
            d,
            data.len()
        )));
    }
    let mut work = data.to_vec();
    for &r in point {
        fold_first_var(&mut work, r);
    }
    Ok(work[0])
}

/// Evaluates the MLE of a tensor at `point`.
pub fn mle_evaluate<F: FieldElement>(t: &Tensor<F>, point: &[F]) -> Result<F> {
    if point.len() != t.num_vars() {
        return Err(ZkError::shape(format!(
            "point has {} coordinates, tensor has {} variables",
            point.len(),
            t.num_vars()
        )));
    }
    evaluate_mle_data(t.data(), point)
}

/// Binds the first `prefix.len()` variables of `data`, returning the
/// remaining table (length data.len() >> prefix.len()).
pub fn fold_prefix<F: FieldElement>(data: &[F], prefix: &[F]) -> Vec<F> {
    let mut work = data.to_vec();
    for &r in prefix {
        fold_first_var(&mut work, r);
    }
    work
}

/// The boolean decomposition of `index` over `bits` coordinates, most
/// significant first, as field elements.
pub fn index_to_point<F: FieldElement>(index: usize, bits: usize) -> Vec<F> {
    (0..bits)
        .map(|k| {
            if (index >> (bits - 1 - k)) & 1 == 1 {
                F::ONE
            } else {
                F::ZERO
            }
        })
        .collect()
}

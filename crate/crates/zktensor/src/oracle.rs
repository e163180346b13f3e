//! Independent brute-force references used by tests, DERIVED example values
//! and the CLI self-check. Nothing here shares code with the fast paths it
//! checks: MLE evaluation is the literal double loop, the lookup identity is
//! evaluated as rational functions, and the neural-net references run in
//! double precision.

use crate::error::{Result, ZkError};
use crate::field::FieldElement;
use crate::tensor::Tensor;

/// Literal evaluation of the hypercube sum Σ_i eq(point, i) · t[i], writing
/// the eq weight out as the explicit product per index: O(2^d · d).
pub fn mle_bruteforce<F: FieldElement>(t: &Tensor<F>, point: &[F]) -> Result<F> {
    let d = t.num_vars();
    if d > 12 {
        return Err(ZkError::Capacity(format!(
            "brute-force oracle capped at 2^12 entries, got 2^{d}"
        )));
    }
    if point.len() != d {
        return Err(ZkError::shape("point/tensor dimension mismatch"));
    }
    let mut total = F::ZERO;
    for (index, value) in t.data().iter().enumerate() {
        let mut weight = F::ONE;
        for (k, &u) in point.iter().enumerate() {
            let bit = (index >> (d - 1 - k)) & 1;
            weight *= if bit == 1 {
                u
            } else {
                F::ONE - u
            };
        }
        total += weight * *value;
    }
    Ok(total)
}

/// Evaluates both sides of the lookup identity
/// Σ_i 1/(X + S_i) = Σ_i m_i/(X + T_i) at the point X and compares them.
/// Errors if X hits a pole on either side (caller resamples).
pub fn rational_identity_check<F: FieldElement>(
    s: &[F],
    t: &[F],
    m: &[F],
    x: F,
) -> Result<bool> {
    if t.len() != m.len() {
        return Err(ZkError::shape("multiplicity length must match table"));
    }
    let mut lhs = F::ZERO;
    for (i, &si) in s.iter().enumerate() {
        let den = x + si;
        let inv = den.inverse().ok_or(ZkError::DivisionByZero { index: i })?;
        lhs += inv;
    }
    let mut rhs = F::ZERO;
    for (i, (&ti, &mi)) in t.iter().zip(m).enumerate() {
        let den = x + ti;
        let inv = den.inverse().ok_or(ZkError::DivisionByZero { index: i })?;
        rhs += mi * inv;
    }
    Ok(lhs == rhs)
}

/// Decides whether the lookup identity holds as an identity of rational
/// functions, by clearing denominators and comparing the two polynomials at
/// |S| + |T| + 1 distinct non-pole points. Exact over the field.
pub fn rational_identity_holds<F: FieldElement>(s: &[F], t: &[F], m: &[F]) -> Result<bool> {
    let degree = s.len() + t.len();
    let mut checked = 0usize;
    let mut candidate = 0u64;
    while checked <= degree {
        let x = F::from_u64(candidate);
        candidate += 1;
        match rational_identity_check(s, t, m, x) {
            Ok(true) => checked += 1,
            Ok(false) => return Ok(false),
            Err(ZkError::DivisionByZero { .. }) => continue, // pole: resample
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Reference multiset-inclusion decision by exhaustive scan.
pub fn subset_bruteforce<F: FieldElement>(s: &[F], t: &[F]) -> bool {
    s.iter().all(|x| t.contains(x))
}

/// Double-precision softmax.
pub fn softmax_reference(z: &[f64]) -> Vec<f64> {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|&v| (v - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.iter().map(|&e| e / total).collect()
}

pub fn sigmoid_reference(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

pub fn gelu_reference(z: f64) -> f64 {
    z * sigmoid_reference(1.702 * z)
}

pub fn swish_reference(z: f64) -> f64 {
    z * sigmoid_reference(z)
}

pub fn swiglu_reference(z: f64, z2: f64) -> f64 {
    swish_reference(z) * z2
}

pub fn relu_reference(z: f64) -> f64 {
    z.max(0.0)
}

pub fn layernorm_reference(x: &[f64], eps: f64) -> Vec<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let denom = (var + eps).sqrt();
    x.iter().map(|v| (v - mean) / denom).collect()
}

/// Schoolbook matrix multiply over the field: C[i][j] = Σ_k A[i][k] B[k][j].
pub fn matmul_reference<F: FieldElement>(
    a: &Tensor<F>,
    b: &Tensor<F>,
) -> Result<Tensor<F>> {
    let (m, n) = match a.dims() {
        [m, n] => (*m, *n),
        _ => return Err(ZkError::shape("matmul oracle expects 2-d tensors")),
    };
    let (n2, p) = match b.dims() {
        [n2, p] => (*n2, *p),
        _ => return Err(ZkError::shape("matmul oracle expects 2-d tensors")),
    };
    if n != n2 {
        return Err(ZkError::shape("inner dimensions differ"));
    }
    let mut out = vec![F::ZERO; m * p];
    for i in 0..m {
        for k in 0..n {
            let aik = a.get(i * n + k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i * p + j] += aik * b.get(k * p + j);
            }
        }
    }
    Tensor::new(vec![m, p], out, a.scale_log2 + b.scale_log2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F61, Fr255};
    use crate::mle::{index_to_point, mle_evaluate};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn bruteforce_agrees_with_fast_mle() {
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        for _ in 0..500 {
            let d = rng.gen_range(0..=10);
            let data: Vec<Fr255> = (0..1usize << d).map(|_| Fr255::random(&mut rng)).collect();
            let t = Tensor::new(vec![1 << d], data, 0).unwrap();
            let point: Vec<Fr255> = (0..d).map(|_| Fr255::random(&mut rng)).collect();
            assert_eq!(
                mle_bruteforce(&t, &point).unwrap(),
                mle_evaluate(&t, &point).unwrap()
            );
        }
    }

    #[test]
    fn bruteforce_boolean_points_and_constants() {
        let data: Vec<F61> = (0..8u64).map(F61::from_u64).collect();
        let t = Tensor::new(vec![8], data, 0).unwrap();
        for i in 0..8 {
            let pt: Vec<F61> = index_to_point(i, 3);
            assert_eq!(mle_bruteforce(&t, &pt).unwrap(), F61::from_u64(i as u64));
        }
        let c = Tensor::new(vec![4], vec![F61::from_u64(9); 4], 0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(13);
        let pt: Vec<F61> = (0..2).map(|_| F61::random(&mut rng)).collect();
        assert_eq!(mle_bruteforce(&c, &pt).unwrap(), F61::from_u64(9));
    }

    #[test]
    fn rational_identity_on_spec_instance() {
        // S=[1,2,2,1], T=[1,2], m=[2,2]: both sides equal 9/10 at X=3
        let s: Vec<F61> = [1u64, 2, 2, 1].map(F61::from_u64).to_vec();
        let t: Vec<F61> = [1u64, 2].map(F61::from_u64).to_vec();
        let m: Vec<F61> = [2u64, 2].map(F61::from_u64).to_vec();
        let x = F61::from_u64(3);
        assert!(rational_identity_check(&s, &t, &m, x).unwrap());
        // the common value is 9/10 in the field
        let nine_tenths = F61::from_u64(9) * F61::from_u64(10).inverse().unwrap();
        let lhs: F61 = s
            .iter()
            .map(|&si| (x + si).inverse().unwrap())
            .sum();
        assert_eq!(lhs, nine_tenths);
        assert!(rational_identity_holds(&s, &t, &m).unwrap());
    }

    #[test]
    fn rational_identity_detects_bad_multiplicities() {
        let mut rng = ChaCha20Rng::seed_from_u64(14);
        let s: Vec<F61> = [1u64, 2, 2, 1].map(F61::from_u64).to_vec();
        let t: Vec<F61> = [1u64, 2].map(F61::from_u64).to_vec();
        let bad_m: Vec<F61> = [3u64, 1].map(F61::from_u64).to_vec();
        let mut rejected = 0;
        for _ in 0..50 {
            let x = F61::random(&mut rng);
            match rational_identity_check(&s, &t, &bad_m, x) {
                Ok(false) => rejected += 1,
                Ok(true) => {}
                Err(_) => {} // pole, ignore
            }
        }
        assert!(rejected >= 49, "bad m must fail at almost every point");
        assert!(!rational_identity_holds(&s, &t, &bad_m).unwrap());
    }

    #[test]
    fn identity_table_with_unit_multiplicities() {
        let t: Vec<F61> = [5u64, 9, 13, 21].map(F61::from_u64).to_vec();
        let m = vec![F61::ONE; 4];
        assert!(rational_identity_holds(&t, &t, &m).unwrap());
    }

    #[test]
    fn softmax_reference_cases() {
        let out = softmax_reference(&[0.0, 0.0, 0.0, 0.0]);
        for v in &out {
            assert!((v - 0.25).abs() < 1e-12);
        }
        let out = softmax_reference(&[1.0, 0.0]);
        assert!((out[0] - 0.7311).abs() < 1e-4);
        assert!((out[1] - 0.2689).abs() < 1e-4);
        let sum: f64 = softmax_reference(&[3.0, -1.0, 0.5]).iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn activation_references() {
        assert!((sigmoid_reference(0.0) - 0.5).abs() < 1e-12);
        assert!((sigmoid_reference(1.0) - 0.7311).abs() < 1e-4);
        assert_eq!(gelu_reference(0.0), 0.0);
        assert!((swish_reference(1.0) - 0.7311).abs() < 1e-4);
        let ln = layernorm_reference(&[1.0, -1.0], 1e-5);
        assert!((ln[0] - 1.0 / (1.0f64 + 1e-5).sqrt()).abs() < 1e-9);
        assert!((ln[1] + 1.0 / (1.0f64 + 1e-5).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn matmul_oracle_schoolbook() {
        let a: Tensor<F61> = Tensor::from_i64(vec![2, 2], &[1, 2, 3, 4], 0).unwrap();
        let b: Tensor<F61> = Tensor::from_i64(vec![2, 2], &[5, 6, 7, 8], 0).unwrap();
        let c = matmul_reference(&a, &b).unwrap();
        let expect: Vec<F61> = [19i64, 22, 43, 50].map(F61::from_i64).to_vec();
        assert_eq!(c.data(), &expect[..]);
    }
}

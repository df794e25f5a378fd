//! The contract every instance category implements.
//!
//! A [`FactorizationSystem`] is a category together with a factorization
//! system of finite type: every morphism factors as a covering followed by an
//! embedding, endomorphisms that are embeddings or coverings are invertible,
//! and the sequential limits and colimits used by the generic algorithms
//! exist. The generic algorithms in [`crate::algorithms`] only talk to an
//! instance through this trait.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::power;

pub trait FactorizationSystem: Sized {
    type Object: Clone + Debug + PartialEq;
    type Morphism: Clone + Debug;

    /// Short instance tag used in reports.
    const NAME: &'static str;

    fn domain(f: &Self::Morphism) -> Self::Object;
    fn codomain(f: &Self::Morphism) -> Self::Object;

    /// Cardinality, dimension or point count. Bounds the length of image chains.
    fn size(x: &Self::Object) -> usize;

    fn validate_object(x: &Self::Object) -> Result<()>;
    fn validate(f: &Self::Morphism) -> Result<()>;

    fn identity(x: &Self::Object) -> Self::Morphism;

    /// `g ∘ f`.
    fn compose(g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn equal(a: &Self::Morphism, b: &Self::Morphism) -> bool;

    /// Splits `f` as `(cover, embed)` with `embed ∘ cover = f`.
    fn factorize(f: &Self::Morphism) -> (Self::Morphism, Self::Morphism);

    fn is_embedding(f: &Self::Morphism) -> bool;
    fn is_covering(f: &Self::Morphism) -> bool;

    /// Inverse of an isomorphism; errors if `f` is not invertible.
    fn invert_iso(f: &Self::Morphism) -> Result<Self::Morphism>;

    /// Whether two embeddings into the same object have the same image.
    fn same_subobject(a: &Self::Morphism, b: &Self::Morphism) -> bool;

    /// Whether the image of embedding `a` lies inside the image of embedding `b`.
    fn subobject_contained(a: &Self::Morphism, b: &Self::Morphism) -> bool;

    /// Whether two coverings out of the same object are isomorphic under it.
    fn same_quotient(a: &Self::Morphism, b: &Self::Morphism) -> bool;

    /// An isomorphism `k` with `k ∘ a = b ∘ k`, if the automorphisms `a` and
    /// `b` are conjugate.
    fn conjugating_iso(a: &Self::Morphism, b: &Self::Morphism) -> Option<Self::Morphism>;

    /// An idempotent in the closure of `{f, f², …}`, the input of the
    /// idempotent-power algorithm. The default searches the power sequence,
    /// which is finite when hom-sets are.
    fn power_closure_idempotent(f: &Self::Morphism) -> Result<Self::Morphism> {
        power::idempotent_power::<Self>(f, power::factorial_cap(Self::size(&Self::domain(f))))
            .map(|cycle| cycle.idempotent)
    }

    /// All objects of size at most `max_size`, when that is a finite list.
    fn enumerate_objects(_max_size: usize) -> Option<Vec<Self::Object>> {
        None
    }

    /// All morphisms `x → y`, when that is a finite list.
    fn enumerate_morphisms(_x: &Self::Object, _y: &Self::Object) -> Option<Vec<Self::Morphism>> {
        None
    }

    /// Every subobject of `x` as an embedding, provided there are at most
    /// `guard` of them.
    fn enumerate_subobjects(_x: &Self::Object, _guard: u128) -> Option<Vec<Self::Morphism>> {
        None
    }
}

/// Instances whose objects are finite sets of points `0..n` with extra
/// structure, and whose morphisms are functions on points.
pub trait Concrete: FactorizationSystem {
    fn table(f: &Self::Morphism) -> &[usize];
}

/// `f^n` by repeated squaring; `f⁰` is the identity.
pub fn power<C: FactorizationSystem>(f: &C::Morphism, n: u64) -> Result<C::Morphism> {
    let x = C::domain(f);
    if x != C::codomain(f) {
        return Err(Error::Composition("power of a non-endomorphism".into()));
    }
    let mut result = C::identity(&x);
    let mut base = f.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = C::compose(&base, &result)?;
        }
        n >>= 1;
        if n > 0 {
            base = C::compose(&base, &base)?;
        }
    }
    Ok(result)
}

/// An endomorphism `f: X → X` of some instance.
#[derive(Debug, Clone)]
pub struct Endo<C: FactorizationSystem> {
    pub object: C::Object,
    pub map: C::Morphism,
}

impl<C: FactorizationSystem> Endo<C> {
    pub fn new(map: C::Morphism) -> Result<Self> {
        C::validate(&map)?;
        let object = C::domain(&map);
        if object != C::codomain(&map) {
            return Err(Error::InvalidMorphism("domain and codomain differ".into()));
        }
        Ok(Self { object, map })
    }

    pub fn identity(object: C::Object) -> Self {
        let map = C::identity(&object);
        Self { object, map }
    }

    pub fn size(&self) -> usize {
        C::size(&self.object)
    }

    pub fn pow(&self, n: u64) -> Result<Self> {
        Ok(Self { object: self.object.clone(), map: power::<C>(&self.map, n)? })
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { object: self.object.clone(), map: C::compose(&self.map, &other.map)? })
    }
}

/// An embedding `A ↣ X`.
#[derive(Debug, Clone)]
pub struct Subobject<C: FactorizationSystem> {
    pub carrier: C::Object,
    pub embedding: C::Morphism,
}

impl<C: FactorizationSystem> Subobject<C> {
    pub fn new(embedding: C::Morphism) -> Self {
        Self { carrier: C::domain(&embedding), embedding }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        C::same_subobject(&self.embedding, &other.embedding)
    }
}

/// A covering `X ↠ Q`.
#[derive(Debug, Clone)]
pub struct Quotient<C: FactorizationSystem> {
    pub carrier: C::Object,
    pub covering: C::Morphism,
}

impl<C: FactorizationSystem> Quotient<C> {
    pub fn new(covering: C::Morphism) -> Self {
        Self { carrier: C::codomain(&covering), covering }
    }
}

/// The eventual image of an endomorphism with all of its structure maps.
///
/// `iota: E ↣ X` and `pi: X ↠ E` satisfy `pi ∘ iota = 1`, the eventual
/// idempotent is `iota ∘ pi`, and `auto` is the invertible restriction of
/// `f` to `E`.
#[derive(Debug, Clone)]
pub struct EventualImageData<C: FactorizationSystem> {
    pub carrier: C::Object,
    pub iota: C::Morphism,
    pub pi: C::Morphism,
    pub idempotent: C::Morphism,
    pub auto: C::Morphism,
    pub auto_inv: C::Morphism,
    /// Least `n` with `im f^{n+1} = im f^n`.
    pub stabilization_index: usize,
}

//! The generic eventual-image algorithms.
//!
//! Two independent routes produce an [`EventualImageData`]:
//!
//! * [`eventual_image_chain`] factors `f = m₀ e₀`, restricts to the image as
//!   `g₁ = e₀ m₀`, and repeats until the restriction is a covering. The
//!   composite of the embeddings is `iota`, the restriction at the end is the
//!   automorphism, and `pi = auto^{-n} ∘ (e_{n-1} ⋯ e₀)`.
//! * [`eventual_image_idempotent_power`] takes an idempotent from the closure
//!   of the powers of `f` and splits it.
//!
//! [`terminal_coalgebra`] and [`initial_algebra_dual`] compute the carrier a
//! third way, as the greatest subobject `A` with `A ⊆ fA` and as the stable
//! quotient of the kernels of `fⁿ`.

use crate::category::{power, EventualImageData, Endo, FactorizationSystem, Quotient, Subobject};
use crate::error::{Error, Result};

/// The descending chain `X ⊇ im f ⊇ im f² ⊇ …` up to its first repeat.
#[derive(Debug, Clone)]
pub struct ImageChain<C: FactorizationSystem> {
    pub stages: Vec<Subobject<C>>,
    pub stabilization_index: usize,
}

struct ChainRun<C: FactorizationSystem> {
    stages: Vec<Subobject<C>>,
    /// `e_{n-1} ∘ ⋯ ∘ e₀ : X ↠ E`.
    cover: C::Morphism,
    /// Restriction of `f` to the final stage.
    restriction: C::Morphism,
}

fn checked_factorize<C: FactorizationSystem>(
    g: &C::Morphism,
) -> Result<(C::Morphism, C::Morphism)> {
    let (e, m) = C::factorize(g);
    if !C::is_covering(&e) {
        return Err(Error::ContractViolation("factorization cover is not a covering".into()));
    }
    if !C::is_embedding(&m) {
        return Err(Error::ContractViolation("factorization embed is not an embedding".into()));
    }
    if !C::equal(&C::compose(&m, &e)?, g) {
        return Err(Error::ContractViolation("factorization does not recompose".into()));
    }
    Ok((e, m))
}

fn run_chain<C: FactorizationSystem>(e: &Endo<C>) -> Result<ChainRun<C>> {
    let size = e.size();
    let mut embed = C::identity(&e.object);
    let mut cover = C::identity(&e.object);
    let mut g = e.map.clone();
    let mut stages = vec![Subobject::new(embed.clone())];
    while !C::is_covering(&g) {
        if stages.len() > size {
            return Err(Error::ContractViolation(format!(
                "image chain did not stabilize within {size} steps"
            )));
        }
        let (down, inc) = checked_factorize::<C>(&g)?;
        embed = C::compose(&embed, &inc)?;
        cover = C::compose(&down, &cover)?;
        g = C::compose(&down, &inc)?;
        stages.push(Subobject::new(embed.clone()));
    }
    Ok(ChainRun { stages, cover, restriction: g })
}

pub fn image_chain<C: FactorizationSystem>(e: &Endo<C>) -> Result<ImageChain<C>> {
    let run = run_chain(e)?;
    let stabilization_index = run.stages.len() - 1;
    Ok(ImageChain { stages: run.stages, stabilization_index })
}

fn invert_checked<C: FactorizationSystem>(auto: &C::Morphism) -> Result<C::Morphism> {
    let inv = C::invert_iso(auto)?;
    let id = C::identity(&C::domain(auto));
    if !C::equal(&C::compose(auto, &inv)?, &id) || !C::equal(&C::compose(&inv, auto)?, &id) {
        return Err(Error::ContractViolation("automorphism inverse is wrong".into()));
    }
    Ok(inv)
}

/// Eventual image via the descending image chain.
pub fn eventual_image_chain<C: FactorizationSystem>(e: &Endo<C>) -> Result<EventualImageData<C>> {
    let run = run_chain(e)?;
    let n = run.stages.len() - 1;
    let iota = run.stages[n].embedding.clone();
    let auto = run.restriction;
    let auto_inv = invert_checked::<C>(&auto)?;
    // iota ∘ cover = fⁿ and cover ∘ iota = autoⁿ, so undoing autoⁿ gives pi.
    let pi = C::compose(&power::<C>(&auto_inv, n as u64)?, &run.cover)?;
    let idempotent = C::compose(&iota, &pi)?;
    Ok(EventualImageData {
        carrier: C::domain(&iota),
        iota,
        pi,
        idempotent,
        auto,
        auto_inv,
        stabilization_index: n,
    })
}

/// Eventual image via an idempotent in the power closure of `f`.
pub fn eventual_image_idempotent_power<C: FactorizationSystem>(
    e: &Endo<C>,
) -> Result<EventualImageData<C>> {
    let idempotent = C::power_closure_idempotent(&e.map)?;
    if !C::equal(&C::compose(&idempotent, &idempotent)?, &idempotent) {
        return Err(Error::ContractViolation("power-closure element is not idempotent".into()));
    }
    let (pi, iota) = checked_factorize::<C>(&idempotent)?;
    let carrier = C::domain(&iota);
    if !C::equal(&C::compose(&pi, &iota)?, &C::identity(&carrier)) {
        return Err(Error::ContractViolation("idempotent splitting has pi ∘ iota ≠ 1".into()));
    }
    let auto = C::compose(&pi, &C::compose(&e.map, &iota)?)?;
    let auto_inv = invert_checked::<C>(&auto)?;
    let stabilization_index = stabilization_by_size::<C>(e, C::size(&carrier))?;
    Ok(EventualImageData { carrier, iota, pi, idempotent, auto, auto_inv, stabilization_index })
}

/// Least `n` whose image `im fⁿ` has the size of the eventual image.
fn stabilization_by_size<C: FactorizationSystem>(e: &Endo<C>, target: usize) -> Result<usize> {
    let mut current = C::identity(&e.object);
    for n in 0..=e.size() {
        let (_, m) = C::factorize(&current);
        if C::size(&C::domain(&m)) == target {
            return Ok(n);
        }
        current = C::compose(&e.map, &current)?;
    }
    Err(Error::ContractViolation("image sizes never reach the eventual image".into()))
}

/// Greatest subobject `A` with `A ⊆ fA`, by iterating `A ↦ fA` from the top.
pub fn terminal_coalgebra<C: FactorizationSystem>(e: &Endo<C>) -> Result<Subobject<C>> {
    let mut current = C::identity(&e.object);
    for _ in 0..=e.size() {
        let (_, next) = checked_factorize::<C>(&C::compose(&e.map, &current)?)?;
        if C::same_subobject(&next, &current) {
            return Ok(Subobject::new(current));
        }
        current = next;
    }
    Err(Error::ContractViolation("coalgebra iteration did not reach a fixpoint".into()))
}

/// The dual construction: the quotient `X ↠ ei f` at which the coverings
/// of `f, f², …` stop changing.
pub fn initial_algebra_dual<C: FactorizationSystem>(e: &Endo<C>) -> Result<Quotient<C>> {
    let mut current = C::identity(&e.object);
    let mut power = e.map.clone();
    for _ in 0..=e.size() {
        let (next, _) = checked_factorize::<C>(&power)?;
        if C::same_quotient(&next, &current) {
            return Ok(Quotient::new(current));
        }
        current = next;
        power = C::compose(&e.map, &power)?;
    }
    Err(Error::ContractViolation("quotient iteration did not stabilize".into()))
}

/// `u_* = pi_g ∘ u ∘ iota_f : ei f → ei g` for an intertwiner `u f = g u`.
pub fn induced_map<C: FactorizationSystem>(
    u: &C::Morphism,
    f: &Endo<C>,
    g: &Endo<C>,
    eif: &EventualImageData<C>,
    eig: &EventualImageData<C>,
) -> Result<C::Morphism> {
    let uf = C::compose(u, &f.map)?;
    let gu = C::compose(&g.map, u)?;
    if !C::equal(&uf, &gu) {
        return Err(Error::NotIntertwining(format!("u∘f = {uf:?} but g∘u = {gu:?}")));
    }
    C::compose(&eig.pi, &C::compose(u, &eif.iota)?)
}

use super::group::PermGroup;
use super::primes::{is_prime, p_part};
use crate::error::{invalid, Result};

/// A Sylow `p`-subgroup, grown one factor of `p` at a time: the next element
/// is the first (in enumeration order) `g` in the normalizer of the current
/// `p`-subgroup `P` with `g` outside `P` and `g^p` inside it.
pub fn sylow_subgroup(g: &PermGroup, p: u128, cap: u128) -> Result<PermGroup> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    g.check_element_cap(cap)?;
    let target = p_part(g.order(), p);
    let mut current = PermGroup::trivial(g.degree());
    let mut gens = Vec::new();
    while current.order() < target {
        let normalizer = if current.is_trivial() {
            g.clone()
        } else {
            g.normalizer_of(&current, cap)?
        };
        let mut found = None;
        normalizer.try_for_each_element(cap, |x| {
            if !current.has(x) && current.has(&x.pow(p as u64)) {
                found = Some(x.clone());
                false
            } else {
                true
            }
        })?;
        let x = found.expect("Sylow theory guarantees a p-element in N(P)/P");
        gens.push(x);
        let order = current.order() * p;
        current = PermGroup::with_known_order(g.degree(), gens.clone(), order)?;
    }
    Ok(current)
}

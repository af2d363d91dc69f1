//! Normal form of a presentation and conjugacy of normal forms in `Hol(W)`.
//!
//! Everything is done one Sylow component of `Z_n` at a time; the components
//! are glued back together with the CRT.

use crate::error::{Error, Result};
use crate::group::{AmbientGroup, SubgroupPresentation};
use crate::numtheory::{additive_order, crt, gcd, inv_mod, mul_mod, residue, Factorization};

/// `(p, n_p, |x|_p, |y|_p, |[b, W]|_p)` for every prime `p | n`.
fn local_orders(g: &AmbientGroup, h: &SubgroupPresentation, i: u64) -> Vec<(u64, u64, u64, u64, u64)> {
    let n = g.n();
    let beta_minus = residue(g.beta(h) as i128 - 1, n);
    Factorization::of(n)
        .factors
        .iter()
        .map(|&(p, e)| {
            let np = p.pow(e);
            let part = |v: u64| additive_order(v % np, np);
            (p, np, part(i), part(h.j), part(beta_minus))
        })
        .collect()
}

/// Moves `x = w^i` to an element of minimal order in the coset `x[b, W]`.
///
/// Returns the new exponent and the `u` with `<b w^i'> = <b w^i>^(w^u)`.
pub(crate) fn shrink_into_commutator(g: &AmbientGroup, h: &SubgroupPresentation) -> (u64, u64) {
    let n = g.n();
    let beta_minus = residue(g.beta(h) as i128 - 1, n);
    let mut parts = Vec::new();
    for (_, np, x_p, _, c_p) in local_orders(g, h, h.i) {
        let mut u_p = 0;
        if x_p > 1 && x_p <= c_p {
            // <x>_p lies inside [b, W]_p: solve u (beta - 1) = i (mod n_p)
            let d = gcd(np, beta_minus % np);
            let m = np / d;
            let inv = inv_mod((beta_minus % np) / d % m, m).expect("unit after dividing the gcd");
            u_p = mul_mod((h.i % np) / d, inv, m);
        }
        parts.push((u_p, np));
    }
    let u = crt(&parts);
    (g.conjugate_by_w(h, u).i, u)
}

/// Normal form of `H` up to conjugation by `w^u`; returns `(H^(w^u), u)`.
pub fn to_normal_form(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<(SubgroupPresentation, u64)> {
    g.validate(h)?;
    let (i1, u) = shrink_into_commutator(g, h);
    let conj = SubgroupPresentation::new(h.k, i1, h.j);
    // absorb the p-parts of x that already lie in <y>
    let parts: Vec<(u64, u64)> = local_orders(g, &conj, i1)
        .into_iter()
        .map(|(_, np, x_p, y_p, _)| {
            if x_p > 1 && x_p <= y_p {
                (0, np)
            } else {
                (i1 % np, np)
            }
        })
        .collect();
    let out = SubgroupPresentation::new(h.k, crt(&parts), h.j);
    debug_assert_eq!(residue(i1 as i128 - out.i as i128, g.n()) % h.j, 0);
    debug_assert!(is_normal_form(g, &out));
    Ok((out, u))
}

pub fn is_normal_form(g: &AmbientGroup, h: &SubgroupPresentation) -> bool {
    local_orders(g, h, h.i)
        .into_iter()
        .all(|(_, _, x_p, y_p, c_p)| x_p == 1 || x_p > y_p.max(c_p))
}

/// The `Hol(W)`-conjugacy invariant `(|b|, |x|, |y|)` of a normal form.
pub fn order_triple(g: &AmbientGroup, h: &SubgroupPresentation) -> (u64, u64, u64) {
    (g.b_order(h), g.x_order(h), g.y_order(h))
}

pub fn hol_conjugate(
    g: &AmbientGroup,
    h1: &SubgroupPresentation,
    h2: &SubgroupPresentation,
) -> Result<bool> {
    for h in [h1, h2] {
        g.validate(h)?;
        if !is_normal_form(g, h) {
            return Err(Error::invalid(format!(
                "({}, {}, {}) is not in normal form",
                h.k, h.i, h.j
            )));
        }
    }
    Ok(order_triple(g, h1) == order_triple(g, h2))
}

pub(crate) fn require_normal_form(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<()> {
    g.validate(h)?;
    if is_normal_form(g, h) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "({}, {}, {}) is not in normal form",
            h.k, h.i, h.j
        )))
    }
}

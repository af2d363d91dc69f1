//! Radicals, relative closedness and relative closure.

use crate::error::Result;
use crate::group::{AmbientGroup, GroupElement, SubgroupPresentation};
use crate::normal_form::{require_normal_form, to_normal_form};
use crate::numtheory::{gcd, mul_mod, mult_order, p_part_unchecked, sigma_mod};

/// Exponent `j_R` with `rad(H) = <w^(j_R)>`.
pub fn radical(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<u64> {
    require_normal_form(g, h)?;
    Ok(radical_unchecked(g, h))
}

pub(crate) fn radical_unchecked(g: &AmbientGroup, h: &SubgroupPresentation) -> u64 {
    let s = g.structure_data(h);
    let span = if s.b_negative_on_wbar && s.l % 2 == 1 { 2 * s.l } else { s.l };
    let n = g.n();
    let power = mul_mod(h.i, sigma_mod(g.beta(h), span, n), n);
    gcd(gcd(n, h.j), power)
}

/// Order of `a` on `W / <w^m>`; `C_A(W / <w^m>) = <a^this>`.
pub fn centralizer_exponent(g: &AmbientGroup, m: u64) -> u64 {
    mult_order(g.alpha(), m).expect("alpha is a unit")
}

/// The arithmetic criterion: `C_A(W/<y>) <= <b>` and the right power of `x`
/// lies in `<y>`.
fn closed_arithmetic(g: &AmbientGroup, h: &SubgroupPresentation) -> bool {
    let s = g.structure_data(h);
    if centralizer_exponent(g, h.j) % h.k != 0 {
        return false;
    }
    mul_mod(h.i, x_exponent(g, h, s.l), g.n()) % h.j == 0
}

/// `e` such that `rad(H) = H ∩ W` iff `x^e` lies in `<y>` (given normal form).
///
/// For `beta = -1 (mod 4)` and even `l` the relevant power is the `pi`-part
/// of `sigma(beta, l)`, i.e. `(beta + 1)_2 l / 2`; plain `x^l` is too strong
/// once `b` is negative on `W / <y>`.
pub(crate) fn x_exponent(g: &AmbientGroup, h: &SubgroupPresentation, l: u64) -> u64 {
    let n = g.n();
    let beta = g.beta(h);
    if beta % 4 == 3 && n % 4 == 0 {
        if l % 2 == 1 && h.j % 4 == 0 {
            return mul_mod((beta + 1) % n, l % n, n);
        }
        if l % 2 == 0 {
            return mul_mod(p_part_unchecked(beta + 1, 2) % n, (l / 2) % n, n);
        }
    }
    l % n
}

/// The structural criterion: `rad(H) = H ∩ W` and `C_A(W/(H ∩ W)) <= H`.
fn closed_structural(g: &AmbientGroup, h: &SubgroupPresentation) -> bool {
    let c = centralizer_exponent(g, h.j) % g.a_ord();
    radical_unchecked(g, h) == h.j && g.subgroup_contains(h, GroupElement::new(c, 0))
}

pub fn is_relatively_closed(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<bool> {
    require_normal_form(g, h)?;
    let verdict = closed_arithmetic(g, h);
    debug_assert_eq!(verdict, closed_structural(g, h), "criteria disagree on {h:?} in {g:?}");
    Ok(verdict)
}

/// Both verdicts, for cross-checking.
pub fn closedness_verdicts(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<(bool, bool)> {
    require_normal_form(g, h)?;
    Ok((closed_arithmetic(g, h), closed_structural(g, h)))
}

/// `H · rad(H) · C_A(W / rad(H))`, in canonical form.
pub fn relative_closure(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<SubgroupPresentation> {
    let (nf, u) = to_normal_form(g, h)?;
    let j_r = radical_unchecked(g, &nf);
    let m_r = centralizer_exponent(g, j_r);
    let gens = [
        g.element_reduced(nf.k, nf.i),
        g.element_reduced(0, j_r),
        g.element_reduced(m_r, 0),
    ];
    let closed = g.canonical_presentation(&gens)?;
    Ok(g.conjugate_by_w(&closed, (g.n() - u % g.n()) % g.n()))
}

/// `K_N = <w^N> · C_A(W / <w^N>)`, the kernel of `G` on `W / <w^N>`.
pub fn kernel_of_quotient_action(g: &AmbientGroup, big_n: u64) -> Result<SubgroupPresentation> {
    if big_n == 0 || g.n() % big_n != 0 {
        return Err(crate::error::Error::invalid(format!(
            "{big_n} does not divide n = {}",
            g.n()
        )));
    }
    let gens = [
        g.element_reduced(0, big_n),
        g.element_reduced(centralizer_exponent(g, big_n), 0),
    ];
    g.canonical_presentation(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g83() -> AmbientGroup {
        AmbientGroup::new(8, 3).unwrap()
    }

    #[test]
    fn radical_examples() {
        let g = g83();
        assert_eq!(radical(&g, &SubgroupPresentation::new(1, 1, 4)).unwrap(), 4);
        assert_eq!(radical(&g, &SubgroupPresentation::new(1, 0, 2)).unwrap(), 2);
        assert_eq!(radical(&g, &SubgroupPresentation::new(1, 0, 8)).unwrap(), 8);
        assert!(radical(&g, &SubgroupPresentation::new(1, 2, 4)).is_err());
    }

    #[test]
    fn closedness_examples() {
        let g = g83();
        assert!(is_relatively_closed(&g, &SubgroupPresentation::new(1, 1, 4)).unwrap());
        assert!(!is_relatively_closed(&g, &SubgroupPresentation::new(2, 0, 2)).unwrap());
        assert!(is_relatively_closed(&g, &g.whole()).unwrap());
        assert!(is_relatively_closed(&g, &g.trivial()).unwrap());
    }

    #[test]
    fn closure_examples() {
        let g = g83();
        let w2 = SubgroupPresentation::new(2, 0, 2);
        assert_eq!(relative_closure(&g, &w2).unwrap(), SubgroupPresentation::new(1, 0, 2));
        let p = SubgroupPresentation::new(1, 1, 4);
        assert_eq!(relative_closure(&g, &p).unwrap(), p);
        assert_eq!(relative_closure(&g, &g.trivial()).unwrap(), g.trivial());
    }

    #[test]
    fn kernel_examples() {
        let g = g83();
        assert_eq!(kernel_of_quotient_action(&g, 8).unwrap(), g.trivial());
        assert_eq!(kernel_of_quotient_action(&g, 1).unwrap(), SubgroupPresentation::new(1, 0, 1));
        assert_eq!(kernel_of_quotient_action(&g, 2).unwrap(), SubgroupPresentation::new(1, 0, 2));
        assert!(kernel_of_quotient_action(&g, 3).is_err());
    }
}

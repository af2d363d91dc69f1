//! Arithmetic model of `G = <a> ⋉ <w>` acting on `Z_n`.
//!
//! `W = <w>` is cyclic of order `n` and acts regularly; points are identified
//! with exponents of `w`, and `0` is the point stabilized by `A = <a>`, which
//! acts by `w -> w^alpha`. An element `a^k w^e` is stored as the exponent pair
//! `(k, e)`; it maps the point `v` to `v * alpha^k + e`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{
    additive_order, gcd, hall_part_by, mul_mod, mult_order, pow_mod, residue, sigma_pow_mod,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmbientGroup {
    n: u64,
    alpha: u64,
    a_ord: u64,
}

/// The element `a^k w^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub k: u64,
    pub e: u64,
}

impl GroupElement {
    pub const fn new(k: u64, e: u64) -> Self {
        GroupElement { k, e }
    }
}

/// `H = <a^k w^i, w^j>` with `<w^j> = H ∩ W`.
///
/// `k` is a divisor of `|a|`; `k == |a|` encodes a trivial projection to `A`.
/// `j` is a divisor of `n`; `j == n` encodes `H ∩ W = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupPresentation {
    pub k: u64,
    pub i: u64,
    pub j: u64,
}

impl SubgroupPresentation {
    pub const fn new(k: u64, i: u64, j: u64) -> Self {
        SubgroupPresentation { k, i, j }
    }

    /// Key identifying the subgroup itself: `i` only matters modulo `j`.
    pub fn subgroup_key(&self) -> (u64, u64, u64) {
        (self.k, self.i % self.j, self.j)
    }

    pub fn same_subgroup(&self, other: &Self) -> bool {
        self.subgroup_key() == other.subgroup_key()
    }
}

/// Hall decomposition data attached to a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureData {
    /// `|V|`: product of `n_p` over primes `p | n` with `beta != 1 (mod p)`.
    pub v_order: u64,
    pub u_order: u64,
    /// `|W / (H ∩ W)|`, which equals `j`.
    pub wbar_order: u64,
    /// Image of `V` in `W / (H ∩ W)`.
    pub vbar_order: u64,
    /// Order of `beta` modulo `vbar_order`.
    pub l: u64,
    pub b_negative_on_w: bool,
    pub b_negative_on_wbar: bool,
}

/// JSON interchange form of a presentation together with its ambient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub n: u64,
    pub alpha: u64,
    pub k: u64,
    pub i: u64,
    pub j: u64,
}

/// `true` when `x -> x^gamma` is a negative automorphism of a cyclic group of
/// order `order`: `4 | order` and `gamma = 3 (mod 4)`.
pub fn is_negative_automorphism(gamma: u64, order: u64) -> bool {
    order % 4 == 0 && gamma % 4 == 3
}

impl AmbientGroup {
    pub fn new(n: u64, alpha: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        let alpha = alpha % n;
        if gcd(alpha, n) != 1 {
            return Err(Error::invalid(format!("alpha = {alpha} is not a unit mod {n}")));
        }
        let a_ord = mult_order(alpha, n)?;
        Ok(AmbientGroup { n, alpha, a_ord })
    }

    /// Same as [`AmbientGroup::new`] for a signed multiplier.
    pub fn with_signed_alpha(n: u64, alpha: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        Self::new(n, residue(alpha as i128, n))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn a_ord(&self) -> u64 {
        self.a_ord
    }

    pub fn order(&self) -> u64 {
        self.n * self.a_ord
    }

    /// `a` acts as a negative automorphism of `W`.
    pub fn is_negative(&self) -> bool {
        is_negative_automorphism(self.alpha, self.n)
    }

    /// Ambient of `G / K_m` acting on `W / <w^m>` for `m | n`.
    pub fn quotient(&self, m: u64) -> AmbientGroup {
        assert!(m >= 1 && self.n % m == 0, "{m} does not divide {}", self.n);
        AmbientGroup::new(m, self.alpha % m).expect("units reduce to units")
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 0)
    }

    pub fn element(&self, k: u64, e: u64) -> Result<GroupElement> {
        if k >= self.a_ord || e >= self.n {
            return Err(Error::invalid(format!(
                "({k}, {e}) is not an element of G(n={}, alpha={})",
                self.n, self.alpha
            )));
        }
        Ok(GroupElement::new(k, e))
    }

    /// `a^k w^e` with both exponents reduced.
    pub fn element_reduced(&self, k: u64, e: u64) -> GroupElement {
        GroupElement::new(k % self.a_ord, e % self.n)
    }

    /// `alpha^k mod n`.
    pub fn alpha_pow(&self, k: u64) -> u64 {
        pow_mod(self.alpha, k, self.n)
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let twist = self.alpha_pow(h.k);
        GroupElement::new(
            (g.k + h.k) % self.a_ord,
            (mul_mod(g.e, twist, self.n) + h.e) % self.n,
        )
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        let k = (self.a_ord - g.k) % self.a_ord;
        // (a^k w^e)^-1 = w^-e a^-k = a^-k w^(-e alpha^-k)
        let e = mul_mod((self.n - g.e) % self.n, self.alpha_pow(k), self.n);
        GroupElement::new(k, e)
    }

    /// `g^m = a^(mk) w^(e sigma(alpha^k, m))`.
    pub fn pow(&self, g: GroupElement, m: u64) -> GroupElement {
        let beta = self.alpha_pow(g.k);
        let (sigma, _) = sigma_pow_mod(beta, m, self.n);
        GroupElement::new(
            ((g.k as u128 * m as u128) % self.a_ord as u128) as u64,
            mul_mod(g.e, sigma, self.n),
        )
    }

    /// Image of the point `v` under `g`; a right action.
    pub fn act(&self, g: GroupElement, v: u64) -> u64 {
        (mul_mod(v, self.alpha_pow(g.k), self.n) + g.e) % self.n
    }

    pub fn element_order(&self, g: GroupElement) -> u64 {
        let t_a = self.a_ord / gcd(self.a_ord, g.k);
        let w_part = self.pow(g, t_a);
        debug_assert_eq!(w_part.k, 0);
        t_a * additive_order(w_part.e, self.n)
    }

    fn check(&self, g: GroupElement) -> Result<()> {
        self.element(g.k, g.e).map(|_| ())
    }

    /// Presentation `(k, i, j)` of the subgroup generated by `gens`.
    ///
    /// The `A`-projection is accumulated by Bezout combinations of the
    /// generators; every generator is then split as a power of the lead
    /// element times an element of `W`, and `H ∩ W` collects those `W`-parts
    /// together with the lead element raised to the order of `b`.
    pub fn canonical_presentation(&self, gens: &[GroupElement]) -> Result<SubgroupPresentation> {
        if gens.is_empty() {
            return Err(Error::invalid("empty generator list"));
        }
        for &g in gens {
            self.check(g)?;
        }
        let order = self.order();
        let mut lead = self.identity();
        let mut lead_k = self.a_ord;
        for &g in gens {
            let kk = gcd(lead_k, g.k);
            if kk == lead_k {
                continue;
            }
            let eg = (lead_k as i64).extended_gcd(&(g.k as i64));
            debug_assert_eq!(eg.gcd as u64, kk);
            let s = residue(eg.x as i128, order);
            let t = residue(eg.y as i128, order);
            lead = self.mul(self.pow(lead, s), self.pow(g, t));
            lead_k = kk;
        }
        debug_assert_eq!(lead.k, lead_k % self.a_ord);
        let beta = self.alpha_pow(lead_k);
        let t_b = self.a_ord / lead_k;
        let (sigma, _) = sigma_pow_mod(beta, t_b, self.n);
        let mut j = gcd(self.n, mul_mod(lead.e, sigma, self.n));
        for &g in gens {
            let m = g.k / lead_k;
            let rest = self.mul(self.inv(self.pow(lead, m)), g);
            debug_assert_eq!(rest.k, 0);
            j = gcd(j, rest.e);
        }
        // i only matters modulo j
        Ok(SubgroupPresentation::new(lead_k, lead.e % j, j))
    }

    /// Presentation built from a possibly non-canonical triple.
    pub fn presentation_from_triple(&self, k: u64, i: u64, j: u64) -> Result<SubgroupPresentation> {
        // j = 0 is accepted as the trivial intersection
        if j != 0 && self.n % j != 0 {
            return Err(Error::invalid(format!("j = {j} does not divide n = {}", self.n)));
        }
        let gens = [self.element_reduced(k, i), self.element_reduced(0, j)];
        self.canonical_presentation(&gens)
    }

    /// Whether the triple already satisfies the presentation invariants.
    pub fn is_canonical(&self, h: &SubgroupPresentation) -> bool {
        if h.k == 0 || self.a_ord % h.k != 0 || h.j == 0 || self.n % h.j != 0 || h.i >= self.n {
            return false;
        }
        let (sigma, _) = sigma_pow_mod(self.beta(h), self.a_ord / h.k, self.n);
        mul_mod(h.i, sigma, self.n) % h.j == 0
    }

    pub fn validate(&self, h: &SubgroupPresentation) -> Result<()> {
        if self.is_canonical(h) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "({}, {}, {}) is not a canonical presentation in G(n={}, alpha={})",
                h.k, h.i, h.j, self.n, self.alpha
            )))
        }
    }

    /// The whole group `<a, w>`.
    pub fn whole(&self) -> SubgroupPresentation {
        SubgroupPresentation::new(1, 0, 1)
    }

    pub fn trivial(&self) -> SubgroupPresentation {
        SubgroupPresentation::new(self.a_ord, 0, self.n)
    }

    /// `beta = alpha^k mod n`, the action of `b` on `W`.
    pub fn beta(&self, h: &SubgroupPresentation) -> u64 {
        self.alpha_pow(h.k)
    }

    pub fn generators(&self, h: &SubgroupPresentation) -> [GroupElement; 2] {
        [
            self.element_reduced(h.k, h.i),
            self.element_reduced(0, h.j),
        ]
    }

    pub fn b_order(&self, h: &SubgroupPresentation) -> u64 {
        self.a_ord / h.k
    }

    pub fn x_order(&self, h: &SubgroupPresentation) -> u64 {
        additive_order(h.i, self.n)
    }

    pub fn y_order(&self, h: &SubgroupPresentation) -> u64 {
        self.n / h.j
    }

    /// `|[b, W]| = |<w^(beta - 1)>|`.
    pub fn commutator_order(&self, h: &SubgroupPresentation) -> u64 {
        let beta = self.beta(h);
        additive_order(residue(beta as i128 - 1, self.n), self.n)
    }

    pub fn subgroup_order(&self, h: &SubgroupPresentation) -> u64 {
        self.b_order(h) * self.y_order(h)
    }

    /// Presentation of `H^(w^u)`.
    pub fn conjugate_by_w(&self, h: &SubgroupPresentation, u: u64) -> SubgroupPresentation {
        let beta = self.beta(h);
        let shift = mul_mod(u % self.n, residue(1 - beta as i128, self.n), self.n);
        SubgroupPresentation::new(h.k, (h.i + shift) % self.n, h.j)
    }

    pub fn subgroup_contains(&self, h: &SubgroupPresentation, g: GroupElement) -> bool {
        let g = self.element_reduced(g.k, g.e);
        if g.k % h.k != 0 {
            return false;
        }
        let m = g.k / h.k;
        let (sigma, _) = sigma_pow_mod(self.beta(h), m, self.n);
        let rest = residue(g.e as i128 - mul_mod(h.i, sigma, self.n) as i128, self.n);
        rest % h.j == 0
    }

    /// `K ≤ H` for presentations in this ambient.
    pub fn subgroup_le(&self, k: &SubgroupPresentation, h: &SubgroupPresentation) -> bool {
        self.generators(k).iter().all(|&g| self.subgroup_contains(h, g))
    }

    pub fn structure_data(&self, h: &SubgroupPresentation) -> StructureData {
        let beta = self.beta(h);
        let moves = |p: u64| (beta + p - 1) % p != 0;
        let v_order = hall_part_by(self.n, moves);
        let vbar_order = hall_part_by(h.j, moves);
        let l = mult_order(beta, vbar_order).expect("beta is a unit");
        StructureData {
            v_order,
            u_order: self.n / v_order,
            wbar_order: h.j,
            vbar_order,
            l,
            b_negative_on_w: is_negative_automorphism(beta, self.n),
            b_negative_on_wbar: is_negative_automorphism(beta, h.j),
        }
    }

    pub fn to_doc(&self, h: &SubgroupPresentation) -> SubgroupDoc {
        SubgroupDoc { n: self.n, alpha: self.alpha, k: h.k, i: h.i, j: h.j }
    }
}

impl SubgroupDoc {
    /// Ambient and canonical presentation described by the document.
    pub fn load(&self) -> Result<(AmbientGroup, SubgroupPresentation)> {
        let g = AmbientGroup::new(self.n, self.alpha)?;
        let h = SubgroupPresentation::new(self.k, self.i, self.j);
        if g.is_canonical(&h) {
            return Ok((g, h));
        }
        let h = g.presentation_from_triple(self.k, self.i, self.j)?;
        Ok((g, h))
    }
}

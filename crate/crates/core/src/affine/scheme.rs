//! Association schemes `inv(H ⋉ F_q^+)` and the scheme axioms.

use serde::{Deserialize, Serialize};

use crate::affine::field::FiniteField;
use crate::error::{Error, Result};
use crate::group::{AmbientGroup, SubgroupPresentation};
use crate::numtheory::mult_order;
use crate::orbits::orbits_explicit;

/// Relation colors on `q` points, stored row-major; color `0` is the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociationScheme {
    pub point_count: usize,
    pub rank: usize,
    pub valencies: Vec<usize>,
    pub reflexive_color: u16,
    pub colors: Vec<u16>,
}

/// `ΓL_1(q) = <a, w>` with `w` the primitive element and `a` the Frobenius map.
pub fn gamma_l1(field: &FiniteField) -> AmbientGroup {
    let n = field.order() - 1;
    let g = AmbientGroup::new(n, field.p % n).expect("p is a unit mod q - 1");
    assert_eq!(
        mult_order(field.p % n, n).unwrap(),
        field.d as u64,
        "Frobenius has order d on F_q^*"
    );
    g
}

impl AssociationScheme {
    pub fn color(&self, u: usize, v: usize) -> u16 {
        self.colors[u * self.point_count + v]
    }

    /// Builds a scheme from a full color matrix, checking the basic shape.
    pub fn from_colors(point_count: usize, colors: Vec<u16>) -> Result<Self> {
        if colors.len() != point_count * point_count {
            return Err(Error::Malformed(format!(
                "{} colors for {point_count} points",
                colors.len()
            )));
        }
        let rank = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut valencies = vec![0; rank];
        for &c in &colors[..point_count.min(colors.len())] {
            valencies[c as usize] += 1;
        }
        Ok(AssociationScheme { point_count, rank, valencies, reflexive_color: 0, colors })
    }

    /// `inv(H ⋉ F_q^+)` for `H` a subgroup of `gamma_l1(field)`: the colour of
    /// `(u, v)` is the `H`-orbit of `v - u`, with `{0}` as colour 0.
    pub fn from_stabilizer(field: &FiniteField, h: &SubgroupPresentation) -> Result<Self> {
        let g = gamma_l1(field);
        g.validate(h)?;
        let q = field.order() as usize;
        let mut orbit_of = vec![0u16; q - 1];
        for (idx, orbit) in orbits_explicit(&g, h).iter().enumerate() {
            for &t in orbit {
                orbit_of[t as usize] = idx as u16 + 1;
            }
        }
        let mut colors = vec![0u16; q * q];
        for u in 0..q {
            for v in 0..q {
                if u != v {
                    let diff = field.sub(v as u32, u as u32);
                    colors[u * q + v] = orbit_of[field.log(diff) as usize];
                }
            }
        }
        Self::from_colors(q, colors)
    }

    /// Colour index of the transpose of each relation, if every transpose is
    /// a relation.
    pub fn transpose_map(&self) -> Option<Vec<u16>> {
        let q = self.point_count;
        let mut map: Vec<Option<u16>> = vec![None; self.rank];
        for u in 0..q {
            for v in 0..q {
                let (c, t) = (self.color(u, v) as usize, self.color(v, u));
                match map[c] {
                    None => map[c] = Some(t),
                    Some(s) if s != t => return None,
                    _ => {}
                }
            }
        }
        map.into_iter().collect()
    }

    /// Diagonal is colour 0 only, valencies are constant, transposes are
    /// relations and intersection numbers are well defined.
    pub fn is_coherent(&self) -> bool {
        let q = self.point_count;
        let r = self.rank;
        for u in 0..q {
            for v in 0..q {
                if (u == v) != (self.color(u, v) == self.reflexive_color) {
                    return false;
                }
            }
        }
        for u in 0..q {
            let mut out = vec![0; r];
            let mut inn = vec![0; r];
            for v in 0..q {
                out[self.color(u, v) as usize] += 1;
                inn[self.color(v, u) as usize] += 1;
            }
            if out != self.valencies || inn != self.valencies {
                return false;
            }
        }
        if self.transpose_map().is_none() {
            return false;
        }
        let mut table: Vec<Option<Vec<u32>>> = vec![None; r];
        let mut counts = vec![0u32; r * r];
        for u in 0..q {
            for v in 0..q {
                counts.iter_mut().for_each(|c| *c = 0);
                for w in 0..q {
                    counts[self.color(u, w) as usize * r + self.color(w, v) as usize] += 1;
                }
                let k = self.color(u, v) as usize;
                match &table[k] {
                    None => table[k] = Some(counts.clone()),
                    Some(t) if *t != counts => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// `u32` LE point count, `u32` LE rank, `rank` LE `u32` valencies, then
    /// the row-major colour matrix as LE `u16`.
    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 4 * self.rank + 2 * self.colors.len());
        out.extend_from_slice(&(self.point_count as u32).to_le_bytes());
        out.extend_from_slice(&(self.rank as u32).to_le_bytes());
        for &v in &self.valencies {
            out.extend_from_slice(&(v as u32).to_le_bytes());
        }
        for &c in &self.colors {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self> {
        let word = |at: usize| -> Result<u32> {
            bytes
                .get(at..at + 4)
                .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
                .ok_or_else(|| Error::Malformed("truncated scheme header".into()))
        };
        let q = word(0)? as usize;
        let rank = word(4)? as usize;
        let body = 8 + 4 * rank;
        if bytes.len() != body + 2 * q * q {
            return Err(Error::Malformed("scheme body has the wrong length".into()));
        }
        let colors = bytes[body..]
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]))
            .collect();
        let scheme = Self::from_colors(q, colors)?;
        for t in 0..rank {
            if scheme.valencies.get(t).copied() != Some(word(8 + 4 * t)? as usize) {
                return Err(Error::Malformed("valencies do not match the matrix".into()));
            }
        }
        Ok(scheme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FiniteField {
        FiniteField::new(3, 2).unwrap()
    }

    #[test]
    fn gamma_l1_models() {
        let g = gamma_l1(&f9());
        assert_eq!((g.n(), g.alpha(), g.a_ord()), (8, 3, 2));
        let g = gamma_l1(&FiniteField::new(5, 1).unwrap());
        assert_eq!((g.n(), g.alpha(), g.a_ord()), (4, 1, 1));
        let g = gamma_l1(&FiniteField::new(7, 2).unwrap());
        assert_eq!((g.n(), g.alpha(), g.a_ord()), (48, 7, 2));
    }

    #[test]
    fn paley_and_peisert_nine() {
        let f = f9();
        for h in [SubgroupPresentation::new(1, 0, 2), SubgroupPresentation::new(1, 1, 4)] {
            let s = AssociationScheme::from_stabilizer(&f, &h).unwrap();
            assert_eq!((s.rank, s.valencies.clone()), (3, vec![1, 4, 4]));
            assert!(s.is_coherent());
        }
        let t = AssociationScheme::from_stabilizer(&f, &SubgroupPresentation::new(1, 0, 1)).unwrap();
        assert_eq!(t.rank, 2);
        assert!(t.is_coherent());
    }

    #[test]
    fn recolouring_breaks_coherence() {
        let mut s = AssociationScheme::from_stabilizer(&f9(), &SubgroupPresentation::new(1, 0, 2)).unwrap();
        let c = s.colors[1];
        s.colors[1] = 3 - c;
        assert!(!s.is_coherent());
    }

    #[test]
    fn binary_round_trip() {
        let s = AssociationScheme::from_stabilizer(&f9(), &SubgroupPresentation::new(1, 1, 4)).unwrap();
        let bytes = s.to_binary();
        assert_eq!(bytes.len(), 8 + 12 + 2 * 81);
        assert_eq!(AssociationScheme::from_binary(&bytes).unwrap(), s);
        assert!(AssociationScheme::from_binary(&bytes[..20]).is_err());
    }
}

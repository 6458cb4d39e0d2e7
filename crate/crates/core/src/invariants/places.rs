use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::InvariantError;
use crate::algebra::{character_inner_product, ClassFunction, FiniteGroup, LinearCharacter};
use crate::fixtures::NumberField;

/// A character of `G = Gal(K/k)` standing for an Artin representation of
/// `G_k`.
#[derive(Clone, Debug)]
pub struct ArtinRep {
    pub group: FiniteGroup,
    pub character: ClassFunction,
    pub dim: u64,
    pub irreducible: bool,
}

impl ArtinRep {
    pub fn new(group: FiniteGroup, character: ClassFunction) -> Result<Self, InvariantError> {
        if character.values().len() != group.order() || !character.is_class_function(&group) {
            return Err(InvariantError::Inconsistent("not a class function on G".into()));
        }
        let dim = character
            .degree(&group)
            .filter(|d| d.is_positive())
            .and_then(|d| d.to_u64())
            .ok_or_else(|| InvariantError::Inconsistent("χ(1) is not a positive integer".into()))?;
        let norm = character_inner_product(&character, &character, &group)
            .map_err(|_| InvariantError::Inconsistent("⟨χ, χ⟩ is not a non-negative integer".into()))?;
        Ok(ArtinRep {
            group,
            character,
            dim,
            irreducible: norm.is_one(),
        })
    }

    pub fn linear(group: &FiniteGroup, phi: &LinearCharacter) -> Self {
        ArtinRep {
            group: group.clone(),
            character: phi.class_function(),
            dim: 1,
            irreducible: true,
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        ArtinRep::linear(group, &LinearCharacter::trivial(group))
    }
}

/// A place of `k` with its decomposition data in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// Real place; `conjugation` is the element of `G` acting as complex
    /// conjugation at a place above it (the identity if that place is real).
    Real { conjugation: usize },
    Complex,
    /// A prime above `p` with its decomposition group.
    AboveP { decomposition: Vec<usize> },
}

/// Degree of `k` together with its archimedean places and primes above `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceData {
    pub degree: u64,
    pub places: Vec<Place>,
}

impl PlaceData {
    /// Places of the base field of a fixture. Admissible primes split
    /// completely, so every decomposition group above `p` is trivial.
    pub fn from_field(field: &NumberField) -> Self {
        let (g, elems) = field.relative_group();
        let pos = |a: usize| elems.iter().position(|&e| e == a).expect("conjugation lies in Gal(K/k)");
        let mut places: Vec<Place> = field
            .subfield
            .real_conjugations
            .iter()
            .map(|&c| Place::Real { conjugation: pos(c) })
            .collect();
        places.extend((0..field.subfield.signature[1]).map(|_| Place::Complex));
        places.extend((0..field.subfield.degree).map(|_| Place::AboveP {
            decomposition: vec![g.identity()],
        }));
        PlaceData {
            degree: u64::from(field.subfield.degree),
            places,
        }
    }

    /// Places of `k'`, the fixed field of `H ≤ G`, described in `H`.
    pub fn restrict(&self, g: &FiniteGroup, h: &[usize]) -> PlaceData {
        let pos = |x: usize| h.iter().position(|&e| e == x);
        let mut places = Vec::new();
        for v in &self.places {
            match v {
                Place::Complex => places.extend((0..g.order() / h.len()).map(|_| Place::Complex)),
                Place::Real { conjugation } => {
                    let d = g.generated(&[*conjugation]);
                    for (x, _) in g.double_cosets(h, &d) {
                        let c = g.conjugate(x, *conjugation);
                        match pos(c) {
                            Some(i) => places.push(Place::Real { conjugation: i }),
                            None => places.push(Place::Complex),
                        }
                    }
                }
                Place::AboveP { decomposition } => {
                    for (x, _) in g.double_cosets(h, decomposition) {
                        let dw = decomposition
                            .iter()
                            .map(|&y| g.conjugate(x, y))
                            .filter_map(pos)
                            .collect();
                        places.push(Place::AboveP { decomposition: dw });
                    }
                }
            }
        }
        PlaceData {
            degree: self.degree * (g.order() / h.len()) as u64,
            places,
        }
    }

    /// Image of the decomposition data in a quotient `G -> G/N`.
    pub fn push_forward(&self, quotient_map: &[usize], quotient: &FiniteGroup) -> PlaceData {
        let places = self
            .places
            .iter()
            .map(|v| match v {
                Place::Complex => Place::Complex,
                Place::Real { conjugation } => Place::Real {
                    conjugation: quotient_map[*conjugation],
                },
                Place::AboveP { decomposition } => {
                    let mut d: Vec<usize> = decomposition.iter().map(|&x| quotient_map[x]).collect();
                    d.sort_unstable();
                    d.dedup();
                    Place::AboveP {
                        decomposition: quotient.generated(&d),
                    }
                }
            })
            .collect();
        PlaceData {
            degree: self.degree,
            places,
        }
    }

    pub fn real_places(&self) -> usize {
        self.places.iter().filter(|v| matches!(v, Place::Real { .. })).count()
    }

    pub fn complex_places(&self) -> usize {
        self.places.iter().filter(|v| matches!(v, Place::Complex)).count()
    }
}

/// Whether `Ind_k^Q φ` is irreducible. Decided exactly when `k = Q` or when
/// the fixture lists all of `Gal(K/Q)`; `false` otherwise, which only
/// weakens the bounds that use it.
pub fn irreducible_over_q(field: &NumberField, phi: &LinearCharacter) -> bool {
    if field.subfield.degree == 1 {
        return true;
    }
    if !field.is_galois() {
        return false;
    }
    let (_, h) = field.relative_group();
    let big = &field.galois_group;
    let ind = phi.class_function().induce(big, &h);
    character_inner_product(&ind, &ind, big).is_ok_and(|v| v == BigInt::from(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct InvariantTriple {
    pub d: u64,
    pub d_plus: u64,
    pub f: u64,
}

fn fixed(rep: &ArtinRep, h: &[usize]) -> Result<u64, InvariantError> {
    let v: BigInt = rep
        .character
        .fixed_dimension(h)
        .map_err(|_| InvariantError::Inconsistent("non-integral multiplicity of the trivial character".into()))?;
    v.to_u64()
        .ok_or_else(|| InvariantError::Inconsistent("negative multiplicity".into()))
}

/// `d = [k:Q]·dim ρ`, `d⁺ = Σ_{v|∞} dim W^{G_v}`, `f = Σ_{𝔭|p} dim W^{G_𝔭}`.
pub fn compute_invariants(rep: &ArtinRep, places: &PlaceData) -> Result<InvariantTriple, InvariantError> {
    let g = &rep.group;
    let mut d_plus = 0;
    let mut f = 0;
    for v in &places.places {
        match v {
            Place::Complex => d_plus += rep.dim,
            Place::Real { conjugation } => {
                if *conjugation >= g.order() || g.element_order(*conjugation) > 2 {
                    return Err(InvariantError::Inconsistent(
                        "complex conjugation is not an involution".into(),
                    ));
                }
                d_plus += fixed(rep, &g.generated(&[*conjugation]))?;
            }
            Place::AboveP { decomposition } => {
                if !g.is_subgroup(decomposition) {
                    return Err(InvariantError::Inconsistent("decomposition group is not a subgroup".into()));
                }
                f += fixed(rep, decomposition)?;
            }
        }
    }
    Ok(InvariantTriple {
        d: places.degree * rep.dim,
        d_plus,
        f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linear_characters;
    use crate::fixtures::{load_fixture, quadratic_document, SubfieldDoc};

    fn qi() -> NumberField {
        NumberField::from_document(&quadratic_document(-1, &[5]).unwrap()).unwrap()
    }

    #[test]
    fn trivial_character_of_q() {
        let g = FiniteGroup::cyclic(1);
        let places = PlaceData {
            degree: 1,
            places: vec![Place::Real { conjugation: 0 }, Place::AboveP { decomposition: vec![0] }],
        };
        let t = compute_invariants(&ArtinRep::trivial(&g), &places).unwrap();
        assert_eq!((t.d, t.d_plus, t.f), (1, 1, 1));
    }

    #[test]
    fn odd_quadratic_character() {
        // Q(i)/Q viewed over k = Q: drop the subfield so G = C_2
        let mut doc = quadratic_document(-1, &[5]).unwrap();
        doc.subfield = Some(SubfieldDoc {
            group: vec!["id".into(), "tau".into()],
            degree: 1,
            signature: [1, 0],
            real_conjugations: vec!["tau".into()],
            decomposition_groups: vec![],
        });
        let text = toml::to_string(&doc).unwrap();
        let field = load_fixture(&text).unwrap();
        let (g, _) = field.relative_group();
        let places = PlaceData::from_field(&field);
        let chars = linear_characters(&g);
        let t = compute_invariants(&ArtinRep::linear(&g, &chars[1]), &places).unwrap();
        assert_eq!((t.d, t.d_plus, t.f), (1, 0, 1));
        let one = compute_invariants(&ArtinRep::linear(&g, &chars[0]), &places).unwrap();
        assert_eq!((one.d, one.d_plus, one.f), (1, 1, 1));
    }

    #[test]
    fn regular_character_counts_places_of_k() {
        // Ind 1 from the trivial subgroup: d = [K:Q], d⁺ = |S_∞(K)|, f = |S_p(K)|
        let field = qi();
        let places = PlaceData::from_field(&field);
        let (g, _) = field.relative_group();
        let t = compute_invariants(&ArtinRep::trivial(&g), &places).unwrap();
        assert_eq!((t.d, t.d_plus, t.f), (2, 1, 2));
    }

    #[test]
    fn restriction_of_complex_and_real_places() {
        let g = FiniteGroup::cyclic(2);
        let pd = PlaceData {
            degree: 1,
            places: vec![Place::Real { conjugation: 1 }, Place::AboveP { decomposition: vec![0] }],
        };
        let r = pd.restrict(&g, &[0]);
        assert_eq!(r.degree, 2);
        assert_eq!(r.complex_places(), 1);
        assert_eq!(r.real_places(), 0);
        let split = PlaceData {
            degree: 1,
            places: vec![Place::Real { conjugation: 0 }],
        };
        assert_eq!(split.restrict(&g, &[0]).real_places(), 2);
    }

    #[test]
    fn bad_conjugation_is_rejected() {
        let g = FiniteGroup::cyclic(3);
        let pd = PlaceData {
            degree: 1,
            places: vec![Place::Real { conjugation: 1 }],
        };
        assert!(compute_invariants(&ArtinRep::trivial(&g), &pd).is_err());
    }
}

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::schema::{FixtureDocument, PolyDoc, PrimeDoc, SCHEMA_VERSION};
use super::FixtureError;
use crate::algebra::FiniteGroup;

/// An element of `Q[x]/(g)` in the power basis, constant term first.
pub type Elem = Vec<BigRational>;

fn trim(p: &mut Elem) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Elem {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Elem {
    let mut r: Elem = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &b[db];
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        trim(&mut r);
    }
    r
}

fn poly_derivative(a: &[BigRational]) -> Elem {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Number of distinct real roots of a rational polynomial (Sturm).
pub fn count_real_roots(g: &[BigRational]) -> usize {
    let mut seq: Vec<Elem> = vec![g.to_vec(), poly_derivative(g)];
    trim(&mut seq[0]);
    trim(&mut seq[1]);
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq.pop();
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let lead_sign = |p: &Elem| if p.last().unwrap().is_positive() { 1 } else { -1 };
    let at_pos: Vec<i32> = seq.iter().map(lead_sign).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| lead_sign(p) * if (p.len() - 1) % 2 == 0 { 1 } else { -1 })
        .collect();
    changes(at_neg) - changes(at_pos)
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, FixtureError> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| FixtureError::Schema(format!("not a rational number: {s:?}")))
}

pub(crate) fn parse_poly(p: &PolyDoc) -> Result<Elem, FixtureError> {
    p.iter().map(|s| parse_rational(s)).collect()
}

pub(crate) fn format_poly(p: &[BigRational]) -> PolyDoc {
    let mut v: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    while v.len() > 1 && v.last().is_some_and(|s| s == "0") {
        v.pop();
    }
    if v.is_empty() {
        v.push("0".into());
    }
    v
}

/// An automorphism of `K` given by the image of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub name: String,
    pub image: Elem,
}

/// Data of the base field `k` with `G = Gal(K/k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    /// Indices into [`NumberField::automorphisms`].
    pub members: Vec<usize>,
    pub degree: u32,
    pub signature: [u32; 2],
    /// Per real place of `k`, the conjugation element (index into the
    /// automorphism list).
    pub real_conjugations: Vec<usize>,
}

/// Prime-agnostic, exactly validated field data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    pub id: String,
    pub description: String,
    pub poly: Vec<BigInt>,
    pub signature: [u32; 2],
    pub class_number: u64,
    pub complex_conjugation: Option<usize>,
    pub automorphisms: Vec<Automorphism>,
    /// Group law on `automorphisms` (by position).
    pub galois_group: FiniteGroup,
    pub units: Vec<Elem>,
    pub subfield: Subfield,
    pub primes: Vec<PrimeDoc>,
    modulus: Elem,
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// True when the listed automorphisms form all of `Gal(K/Q)`.
    pub fn is_galois(&self) -> bool {
        self.automorphisms.len() == self.degree()
    }

    pub fn is_totally_real(&self) -> bool {
        self.signature[1] == 0
    }

    pub fn has_real_place(&self) -> bool {
        self.signature[0] > 0
    }

    pub fn unit_rank(&self) -> usize {
        (self.signature[0] + self.signature[1]) as usize - 1
    }

    pub fn identity(&self) -> usize {
        self.galois_group.identity()
    }

    /// `G = Gal(K/k)` as a group with its embedding into the automorphism
    /// list.
    pub fn relative_group(&self) -> (FiniteGroup, Vec<usize>) {
        self.galois_group
            .subgroup(&self.subfield.members)
            .expect("validated subgroup")
    }

    pub fn reduce(&self, a: &[BigRational]) -> Elem {
        let mut r = poly_rem(a, &self.modulus);
        r.resize(self.degree(), BigRational::zero());
        r
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Elem {
        self.reduce(&poly_mul(a, b))
    }

    pub fn pow(&self, a: &[BigRational], mut e: u64) -> Elem {
        let mut acc = self.reduce(&[BigRational::one()]);
        let mut base = self.reduce(a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a(b)`: substitutes `b` for the generator in `a`, modulo `g`.
    pub fn compose(&self, a: &[BigRational], b: &[BigRational]) -> Elem {
        let mut acc: Elem = Vec::new();
        for c in a.iter().rev() {
            acc = self.mul(&acc, b);
            if acc.is_empty() {
                acc = vec![BigRational::zero(); self.degree()];
            }
            acc[0] += c;
        }
        self.reduce(&acc)
    }

    /// `σ(x)` for the automorphism at index `s`.
    pub fn apply(&self, s: usize, x: &[BigRational]) -> Elem {
        self.compose(x, &self.automorphisms[s].image)
    }

    pub fn is_zero(&self, a: &[BigRational]) -> bool {
        self.reduce(a).iter().all(|c| c.is_zero())
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn automorphism_index(&self, name: &str) -> Option<usize> {
        self.automorphisms.iter().position(|a| a.name == name)
    }

    /// Validates the prime-agnostic part of a document.
    pub fn from_document(doc: &FixtureDocument) -> Result<Self, FixtureError> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(FixtureError::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        let poly: Vec<BigInt> = doc
            .poly
            .iter()
            .map(|s| {
                BigInt::from_str(s.trim())
                    .map_err(|_| FixtureError::Schema(format!("poly coefficient {s:?} is not an integer")))
            })
            .collect::<Result<_, _>>()?;
        if poly.len() < 2 || !poly.last().unwrap().is_one() {
            return Err(FixtureError::Schema("defining polynomial must be monic of degree >= 1".into()));
        }
        let n = poly.len() - 1;
        let modulus: Elem = poly.iter().cloned().map(BigRational::from_integer).collect();
        let [r1, r2] = doc.signature;
        if (r1 + 2 * r2) as usize != n {
            return Err(FixtureError::Invariant(format!(
                "signature ({r1}, {r2}) does not match degree {n}"
            )));
        }
        let real_roots = count_real_roots(&modulus);
        if real_roots != r1 as usize {
            return Err(FixtureError::Invariant(format!(
                "signature says {r1} real places but the polynomial has {real_roots} real roots"
            )));
        }
        if doc.class_number == 0 {
            return Err(FixtureError::Schema("class_number must be positive".into()));
        }

        let mut automorphisms = Vec::new();
        for g in &doc.galois {
            if automorphisms.iter().any(|a: &Automorphism| a.name == g.name) {
                return Err(FixtureError::Schema(format!("duplicate automorphism name {:?}", g.name)));
            }
            automorphisms.push(Automorphism {
                name: g.name.clone(),
                image: parse_poly(&g.image)?,
            });
        }
        if automorphisms.is_empty() {
            automorphisms.push(Automorphism {
                name: "id".into(),
                image: vec![BigRational::zero(), BigRational::one()],
            });
        }
        let mut field = NumberField {
            id: doc.id.clone(),
            description: doc.description.clone(),
            poly,
            signature: doc.signature,
            class_number: doc.class_number,
            complex_conjugation: None,
            automorphisms,
            galois_group: FiniteGroup::cyclic(1),
            units: Vec::new(),
            subfield: Subfield {
                members: vec![0],
                degree: n as u32,
                signature: doc.signature,
                real_conjugations: Vec::new(),
            },
            primes: doc.primes.clone(),
            modulus,
        };
        for a in &mut field.automorphisms {
            let mut img = a.image.clone();
            img.resize(n, BigRational::zero());
            a.image = poly_rem(&img, &field.modulus);
            a.image.resize(n, BigRational::zero());
        }
        // Each image must be a root of g.
        for a in &field.automorphisms {
            let value = field.compose(
                &field.modulus.clone(),
                &a.image,
            );
            if !value.iter().all(|c| c.is_zero()) {
                return Err(FixtureError::Invariant(format!(
                    "Galois image of {} is not a root of the defining polynomial",
                    a.name
                )));
            }
        }
        let table = field.derive_table()?;
        if let Some(given) = &doc.group_table {
            if *given != table {
                return Err(FixtureError::Invariant(
                    "group_table disagrees with the composition of Galois images".into(),
                ));
            }
        }
        let names = field.automorphisms.iter().map(|a| a.name.clone()).collect();
        field.galois_group = FiniteGroup::from_table(names, table)
            .map_err(|e| FixtureError::Invariant(format!("Galois data: {e}")))?;

        field.units = doc.units.iter().map(parse_poly).collect::<Result<_, _>>()?;
        field.units = field.units.iter().map(|u| field.reduce(u)).collect();
        if field.units.len() != field.unit_rank() {
            return Err(FixtureError::Invariant(format!(
                "expected {} fundamental units, found {}",
                field.unit_rank(),
                field.units.len()
            )));
        }

        if let Some(c) = &doc.complex_conjugation {
            let idx = field
                .automorphism_index(c)
                .ok_or_else(|| FixtureError::Schema(format!("unknown automorphism {c:?}")))?;
            if field.galois_group.element_order(idx) != 2 || field.is_totally_real() {
                return Err(FixtureError::Invariant(format!(
                    "{c} cannot be complex conjugation"
                )));
            }
            field.complex_conjugation = Some(idx);
        }

        field.subfield = match &doc.subfield {
            None => Subfield {
                members: vec![field.identity()],
                degree: n as u32,
                signature: doc.signature,
                real_conjugations: vec![field.identity(); r1 as usize],
            },
            Some(s) => field.validate_subfield(s)?,
        };
        Ok(field)
    }

    fn derive_table(&self) -> Result<Vec<Vec<usize>>, FixtureError> {
        let m = self.automorphisms.len();
        let mut table = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                // (σ_a σ_b)(θ) = σ_a(h_b(θ)) = h_b(h_a(θ))
                let img = self.compose(&self.automorphisms[b].image, &self.automorphisms[a].image);
                let c = self
                    .automorphisms
                    .iter()
                    .position(|x| x.image == img)
                    .ok_or_else(|| {
                        FixtureError::Invariant(format!(
                            "automorphisms not closed under composition ({} ∘ {})",
                            self.automorphisms[a].name, self.automorphisms[b].name
                        ))
                    })?;
                table[a][b] = c;
            }
        }
        Ok(table)
    }

    fn validate_subfield(&self, s: &super::schema::SubfieldDoc) -> Result<Subfield, FixtureError> {
        let idx = |name: &String| {
            self.automorphism_index(name)
                .ok_or_else(|| FixtureError::Schema(format!("unknown automorphism {name:?}")))
        };
        let mut members: Vec<usize> = s.group.iter().map(idx).collect::<Result<_, _>>()?;
        members.sort_unstable();
        members.dedup();
        if !self.galois_group.is_subgroup(&members) {
            return Err(FixtureError::Invariant("subfield group is not a subgroup".into()));
        }
        let n = self.degree();
        let h = members.len();
        if s.degree as usize * h != n {
            return Err(FixtureError::Invariant(format!(
                "[k:Q] = {} times |Gal(K/k)| = {h} is not [K:Q] = {n}",
                s.degree
            )));
        }
        let [k1, k2] = s.signature;
        if (k1 + 2 * k2) != s.degree {
            return Err(FixtureError::Invariant("subfield signature does not match its degree".into()));
        }
        if s.real_conjugations.len() != k1 as usize {
            return Err(FixtureError::Invariant(format!(
                "subfield has {k1} real places but {} conjugations are listed",
                s.real_conjugations.len()
            )));
        }
        let conj: Vec<usize> = s.real_conjugations.iter().map(idx).collect::<Result<_, _>>()?;
        let mut r1 = 0usize;
        let mut r2 = h * k2 as usize;
        for &c in &conj {
            if !members.contains(&c) || self.galois_group.element_order(c) > 2 {
                return Err(FixtureError::Invariant(format!(
                    "{} is not an involution of Gal(K/k)",
                    self.automorphisms[c].name
                )));
            }
            if c == self.identity() {
                r1 += h;
            } else {
                r2 += h / 2;
            }
        }
        if [r1 as u32, r2 as u32] != self.signature {
            return Err(FixtureError::Invariant(format!(
                "places of k and their conjugations give signature ({r1}, {r2}) for K, not ({}, {})",
                self.signature[0], self.signature[1]
            )));
        }
        for d in &s.decomposition_groups {
            let elems: Vec<usize> = d.iter().map(idx).collect::<Result<_, _>>()?;
            if elems.iter().any(|&e| e != self.identity()) {
                return Err(FixtureError::Invariant(
                    "decomposition groups above p must be trivial (p splits completely)".into(),
                ));
            }
        }
        Ok(Subfield {
            members,
            degree: s.degree,
            signature: s.signature,
            real_conjugations: conj,
        })
    }

    /// Re-emits a document for this field.
    pub fn to_document(&self) -> FixtureDocument {
        use super::schema::{GaloisDoc, SubfieldDoc};
        let name = |i: usize| self.automorphisms[i].name.clone();
        let has_subfield = self.subfield.members.len() > 1;
        FixtureDocument {
            schema_version: SCHEMA_VERSION,
            id: self.id.clone(),
            description: self.description.clone(),
            poly: self.poly.iter().map(|c| c.to_string()).collect(),
            signature: self.signature,
            class_number: self.class_number,
            complex_conjugation: self.complex_conjugation.map(name),
            units: self.units.iter().map(|u| format_poly(u)).collect(),
            galois: self
                .automorphisms
                .iter()
                .map(|a| GaloisDoc {
                    name: a.name.clone(),
                    image: format_poly(&a.image),
                })
                .collect(),
            group_table: None,
            subfield: has_subfield.then(|| SubfieldDoc {
                group: self.subfield.members.iter().map(|&i| name(i)).collect(),
                degree: self.subfield.degree,
                signature: self.subfield.signature,
                real_conjugations: self.subfield.real_conjugations.iter().map(|&i| name(i)).collect(),
                decomposition_groups: Vec::new(),
            }),
            primes: self.primes.clone(),
        }
    }
}

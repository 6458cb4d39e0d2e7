#![allow(dead_code)]

use gkdefect::algebra::{linear_characters, ClassFunction, FiniteGroup};
use gkdefect::invariants::{ArtinRep, InvariantTriple, Place, PlaceData};

pub const SHAPES: &[&[usize]] = &[
    &[1], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2], &[9], &[3, 3],
    &[10], &[12], &[2, 6], &[14], &[15], &[16], &[4, 4], &[2, 8], &[2, 2, 4],
];

pub fn group(shape: usize) -> FiniteGroup {
    if shape == SHAPES.len() {
        FiniteGroup::symmetric(3)
    } else {
        FiniteGroup::abelian(SHAPES[shape])
    }
}

/// Sum of linear characters with the given multiplicities (cycled), never zero.
pub fn rep(g: &FiniteGroup, mult: &[u8]) -> ArtinRep {
    let chars = linear_characters(g);
    let mut chi: Option<ClassFunction> = None;
    for (i, c) in chars.iter().enumerate() {
        for _ in 0..mult[i % mult.len()] {
            let f = c.class_function();
            chi = Some(match chi {
                None => f,
                Some(x) => x.add(&f),
            });
        }
    }
    let chi = chi.unwrap_or_else(|| chars[mult.len() % chars.len()].class_function());
    ArtinRep::new(g.clone(), chi).unwrap()
}

pub fn places(g: &FiniteGroup, degree: u64, picks: &[usize]) -> PlaceData {
    let involutions: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) <= 2).collect();
    let r2 = picks[0] as u64 % (degree / 2 + 1);
    let r1 = degree - 2 * r2;
    let mut out = Vec::new();
    for i in 0..r1 as usize {
        out.push(Place::Real {
            conjugation: involutions[picks[1 + i % (picks.len() - 1)] % involutions.len()],
        });
    }
    out.extend((0..r2).map(|_| Place::Complex));
    let np = 1 + picks[1] % degree as usize;
    for i in 0..np {
        let x = picks[(2 + i) % picks.len()] % g.order();
        out.push(Place::AboveP { decomposition: g.generated(&[x]) });
    }
    PlaceData { degree, places: out }
}

pub fn add(a: InvariantTriple, b: InvariantTriple) -> InvariantTriple {
    InvariantTriple { d: a.d + b.d, d_plus: a.d_plus + b.d_plus, f: a.f + b.f }
}

//! Half-space calculus on the universal cover `Y` of the Salvetti complex.
//!
//! Vertices of `Y` are group elements; the edge from `x` to `x·a` is labeled
//! by the generator `a`. The hyperplane dual to that edge is determined by
//! the coset `x·⟨lk(a)⟩` and the label, so a half-space is stored as the
//! minimal-length element of that coset, the label, and a side.

mod axis;
mod checks;
mod context;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::word::{Letter, Raag, Word};

pub use checks::{AxiomReport, ChainReport, Violation};
pub use context::{Chain, Context, Nesting, DEFAULT_HULL_CAP};

/// Default seed for the randomized checks.
pub const DEFAULT_SEED: u64 = 0x5C1;

/// A vertex of `Y`: a group element in normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vertex(Word);

impl Vertex {
    pub fn word(&self) -> &Word {
        &self.0
    }
}

/// Which side of the hyperplane a half-space is.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    /// The side containing `base·label`.
    Plus,
    /// The side containing `base`.
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A half-space in canonical form: `base` is the minimal element of
/// `base·⟨lk(label)⟩`, in normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfSpace {
    base: Word,
    label: usize,
    sign: Sign,
}

impl HalfSpace {
    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn complement(&self) -> HalfSpace {
        HalfSpace { base: self.base.clone(), label: self.label, sign: self.sign.flip() }
    }

    /// Both orientations share a hyperplane.
    pub fn same_hyperplane(&self, other: &HalfSpace) -> bool {
        self.label == other.label && self.base == other.base
    }

    /// The positively labeled edge `(base, base·label)` dual to the boundary.
    pub fn defining_edge(&self) -> (Word, Word) {
        let mut head = self.base.clone();
        head.push(Letter::positive(self.label));
        (self.base.clone(), head)
    }

    /// `(base-normal-form, label, sign)`.
    pub fn render(&self, raag: &Raag) -> String {
        format!("({}, {}, {})", raag.format_word(&self.base), raag.graph().name(self.label), self.sign)
    }
}

/// A finite set of half-spaces separating `from` and `to`, each oriented so
/// that `from` lies outside and `to` inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub from: Vertex,
    pub to: Vertex,
    pub halfspaces: Vec<HalfSpace>,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn sorted(&self) -> Vec<HalfSpace> {
        let mut v = self.halfspaces.clone();
        v.sort();
        v
    }
}

/// The universal cover of the Salvetti complex of a RAAG.
#[derive(Clone, Debug)]
pub struct UniversalCover {
    raag: Raag,
    hull_cap: usize,
}

impl UniversalCover {
    pub fn new(raag: Raag) -> Self {
        UniversalCover { raag, hull_cap: DEFAULT_HULL_CAP }
    }

    pub fn with_hull_cap(mut self, cap: usize) -> Self {
        self.hull_cap = cap;
        self
    }

    pub fn raag(&self) -> &Raag {
        &self.raag
    }

    pub fn hull_cap(&self) -> usize {
        self.hull_cap
    }

    pub fn vertex(&self, w: &Word) -> Vertex {
        Vertex(self.raag.normal_form(w))
    }

    pub fn identity(&self) -> Vertex {
        Vertex(Word::identity())
    }

    /// `x·w` as a vertex.
    pub fn translate(&self, x: &Vertex, w: &Word) -> Vertex {
        self.vertex(&x.0.then(w))
    }

    /// Edge-path distance: `|x^-1 y|`.
    pub fn distance(&self, x: &Vertex, y: &Vertex) -> usize {
        self.raag.length(&x.0.formal_inverse().then(&y.0))
    }

    /// Minimal element of the coset `h·⟨lk(label)⟩`, in normal form.
    ///
    /// Backward pass over the normal form of `h`: a letter is dropped when its
    /// generator lies in `lk(label)` and it commutes with every kept letter to
    /// its right.
    pub fn coset_minimum(&self, h: &Word, label: usize) -> Word {
        let graph = self.raag.graph();
        let nf = self.raag.normal_form(h);
        let mut removable: FixedBitSet = graph.link(label).clone();
        let mut kept = Vec::with_capacity(nf.len());
        for &l in nf.letters().iter().rev() {
            let g = l.generator();
            if removable.contains(g) {
                continue;
            }
            kept.push(l);
            removable.intersect_with(graph.link(g));
        }
        kept.reverse();
        self.raag.normal_form_of_reduced(&Word::from_letters(kept))
    }

    fn canonical(&self, base: &Word, label: usize, sign: Sign) -> HalfSpace {
        HalfSpace { base: self.coset_minimum(base, label), label, sign }
    }

    /// The half-space dual to the edge `(x, x·letter)` that contains `x·letter`.
    pub fn halfspace_of_edge(&self, x: &Vertex, letter: Letter) -> HalfSpace {
        let a = letter.generator();
        if letter.is_inverse() {
            // edge (x a^-1, x) is positively labeled; x a^-1 is its tail
            let mut tail = x.0.clone();
            tail.push(letter);
            self.canonical(&tail, a, Sign::Minus)
        } else {
            self.canonical(&x.0, a, Sign::Plus)
        }
    }

    /// Whether `x ∈ H`, via `d(h·a, x) < d(h, x)` for the defining edge `(h, h·a)`.
    pub fn member(&self, x: &Vertex, h: &HalfSpace) -> bool {
        let rel = self.raag.reduce(&h.base.formal_inverse().then(&x.0));
        let mut stepped = Word::from_letters(vec![Letter::negative(h.label)]);
        stepped = stepped.then(&rel);
        let closer_to_head = self.raag.reduce(&stepped).len() < rel.len();
        match h.sign {
            Sign::Plus => closer_to_head,
            Sign::Minus => !closer_to_head,
        }
    }

    /// `[x, y]`, collected along the normal-form geodesic from `x` to `y`.
    pub fn interval(&self, x: &Vertex, y: &Vertex) -> Interval {
        let path = self.raag.normal_form(&x.0.formal_inverse().then(&y.0));
        self.interval_along(x, &path, y)
    }

    /// `[x, x·path]` where `path` is a reduced word.
    pub fn interval_along(&self, x: &Vertex, path: &Word, y: &Vertex) -> Interval {
        let mut halfspaces = Vec::with_capacity(path.len());
        let mut here = x.0.clone();
        for &l in path.letters() {
            halfspaces.push(self.halfspace_of_edge(&Vertex(here.clone()), l));
            here = self.raag.normal_form(&{
                let mut h = here;
                h.push(l);
                h
            });
        }
        Interval { from: x.clone(), to: y.clone(), halfspaces }
    }

    /// The median: walk from `x` along edges that decrease the distance to
    /// both `y` and `z`, least letter first.
    pub fn median(&self, x: &Vertex, y: &Vertex, z: &Vertex) -> Vertex {
        let mut here = x.0.clone();
        let mut to_y = self.raag.reduce(&here.formal_inverse().then(&y.0));
        let mut to_z = self.raag.reduce(&here.formal_inverse().then(&z.0));
        loop {
            let fy: Vec<(Letter, usize)> =
                self.raag.movable_to_front(&to_y).into_iter().map(|i| (to_y.letters()[i], i)).collect();
            let fz: Vec<(Letter, usize)> =
                self.raag.movable_to_front(&to_z).into_iter().map(|i| (to_z.letters()[i], i)).collect();
            let step = fy
                .iter()
                .filter_map(|&(l, i)| fz.iter().find(|&&(m, _)| m == l).map(|&(_, j)| (l, i, j)))
                .min_by_key(|&(l, _, _)| l);
            let Some((l, i, j)) = step else { break };
            here.push(l);
            let mut ly = to_y.into_letters();
            ly.remove(i);
            to_y = Word::from_letters(ly);
            let mut lz = to_z.into_letters();
            lz.remove(j);
            to_z = Word::from_letters(lz);
        }
        self.vertex(&here)
    }

    /// Translate of `H` by `f`.
    pub fn act(&self, f: &Word, h: &HalfSpace) -> HalfSpace {
        self.canonical(&f.then(&h.base), h.label, h.sign)
    }

    /// Translate of an interval by `f`.
    pub fn act_interval(&self, f: &Word, i: &Interval) -> Interval {
        Interval {
            from: self.vertex(&f.then(&i.from.0)),
            to: self.vertex(&f.then(&i.to.0)),
            halfspaces: i.halfspaces.iter().map(|h| self.act(f, h)).collect(),
        }
    }
}

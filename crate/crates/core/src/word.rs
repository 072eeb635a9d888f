//! Words over the generators of a right-angled Artin group and their
//! reduction theory modulo partial commutation.
//!
//! Two letters *commute* when their generators are distinct and adjacent in
//! the defining graph. A word is *reduced* when no letter can be brought next
//! to its inverse by such swaps; reduced words are geodesics and two reduced
//! words represent the same element exactly when one is a shuffle of the other.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::DefiningGraph;

/// Largest absolute exponent accepted by the word parser.
pub const MAX_EXPONENT: i64 = 1_000_000;

/// A generator or its inverse. Ordered `a < a^-1 < b < b^-1 < ...` in
/// vertex order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u32) << 1) | u32::from(inverse))
    }

    pub fn positive(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn negative(generator: usize) -> Self {
        Self::new(generator, true)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2 * generators`, following the letter order.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.generator(), if self.is_inverse() { "'" } else { "" })
    }
}

/// A finite sequence of letters. Words carry no graph; the [`Raag`] they are
/// used with supplies commutation.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Formal inverse: reverse and flip every sign. No reduction.
    pub fn formal_inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Formal concatenation. No reduction.
    pub fn then(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotated(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// Per-generator signed occurrence counts: the image in the abelianization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// A right-angled Artin group, given by its defining graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raag {
    graph: Arc<DefiningGraph>,
}

impl Raag {
    pub fn new(graph: DefiningGraph) -> Self {
        Raag { graph: Arc::new(graph) }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    /// Letters of distinct, adjacent generators.
    #[inline]
    pub fn commute(&self, x: Letter, y: Letter) -> bool {
        self.graph.are_adjacent(x.generator(), y.generator())
    }

    /// All `2 * rank` letters in letter order.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.rank()).map(Letter::from_code)
    }

    pub fn letter(&self, name: &str, inverse: bool) -> Result<Letter> {
        let g = self.graph.vertex(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Letter::new(g, inverse))
    }

    /// Parses whitespace separated tokens `x`, `x^k` (`k` a nonzero integer)
    /// or `1` for the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exponent) = match token.split_once('^') {
                None => (token, 1),
                Some((name, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::WordSyntax(format!("bad exponent in `{token}`")))?;
                    if e == 0 {
                        return Err(Error::WordSyntax(format!("zero exponent in `{token}`")));
                    }
                    if e.abs() > MAX_EXPONENT {
                        return Err(Error::WordSyntax(format!("exponent too large in `{token}`")));
                    }
                    (name, e)
                }
            };
            if name.is_empty() {
                return Err(Error::WordSyntax(format!("missing generator in `{token}`")));
            }
            let letter = self.letter(name, exponent < 0)?;
            letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }

    /// Word syntax rendering; the empty word renders as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = w.letters().iter().map(|&l| self.format_letter(l)).collect();
        parts.join(" ")
    }

    pub fn format_letter(&self, l: Letter) -> String {
        let name = self.graph.name(l.generator());
        if l.is_inverse() {
            format!("{name}^-1")
        } else {
            name.to_string()
        }
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Raag, &'a Word);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format_word(self.1))
            }
        }
        Show(self, w)
    }

    /// Letters whose generator lies outside the graph.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.generator() >= self.rank()) {
            Some(l) => Err(Error::UnknownGenerator(format!("#{}", l.generator()))),
            None => Ok(()),
        }
    }

    /// Free reduction modulo commutation. Each incoming letter cancels
    /// against the nearest earlier occurrence of its inverse when every
    /// letter in between commutes with it; the invariant is that the output
    /// prefix stays reduced.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &x in w.letters() {
            let target = x.inverse();
            let mut cancel = None;
            for k in (0..out.len()).rev() {
                let y = out[k];
                if y == target {
                    cancel = Some(k);
                    break;
                }
                if !self.commute(x, y) {
                    break;
                }
            }
            match cancel {
                Some(k) => {
                    out.remove(k);
                }
                None => out.push(x),
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.reduce(w).len() == w.len()
    }

    /// Geodesic length of the element represented by `w`.
    pub fn length(&self, w: &Word) -> usize {
        self.reduce(w).len()
    }

    /// Lexicographically least reduced word representing the same element.
    ///
    /// Lex-least topological order of the dependence DAG of `reduce(w)`:
    /// letter `j` depends on the latest earlier occurrence of every generator
    /// that does not commute with it (its own generator included).
    pub fn normal_form(&self, w: &Word) -> Word {
        let r = self.reduce(w);
        self.normal_form_of_reduced(&r)
    }

    pub(crate) fn normal_form_of_reduced(&self, r: &Word) -> Word {
        let n = r.len();
        let rank = self.rank();
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut pending = vec![0usize; n];
        let mut last: Vec<Option<usize>> = vec![None; rank];
        for (j, &l) in r.letters().iter().enumerate() {
            let g = l.generator();
            for (h, slot) in last.iter().enumerate() {
                if let Some(i) = *slot {
                    if h == g || !self.graph.are_adjacent(h, g) {
                        successors[i].push(j);
                        pending[j] += 1;
                    }
                }
            }
            last[g] = Some(j);
        }
        let mut ready: BinaryHeap<Reverse<(Letter, usize)>> = (0..n)
            .filter(|&j| pending[j] == 0)
            .map(|j| Reverse((r.0[j], j)))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((l, j))) = ready.pop() {
            out.push(l);
            for &s in &successors[j] {
                pending[s] -= 1;
                if pending[s] == 0 {
                    ready.push(Reverse((r.0[s], s)));
                }
            }
        }
        Word(out)
    }

    /// Whether `u` and `v` represent the same element.
    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.reduce(w).is_empty()
    }

    /// Reduced product `u v`.
    pub fn concat(&self, u: &Word, v: &Word) -> Word {
        self.reduce(&u.then(v))
    }

    /// Reduced inverse.
    pub fn inverse(&self, w: &Word) -> Word {
        self.reduce(&w.formal_inverse())
    }

    /// Reduced `n`-th power.
    pub fn power(&self, w: &Word, n: usize) -> Word {
        let base = self.reduce(w);
        let mut letters = Vec::with_capacity(base.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(base.letters());
        }
        self.reduce(&Word(letters))
    }

    /// Reduced `n`-th power for any integer `n`.
    pub fn power_signed(&self, w: &Word, n: i64) -> Word {
        if n >= 0 {
            self.power(w, n as usize)
        } else {
            self.power(&w.formal_inverse(), n.unsigned_abs() as usize)
        }
    }

    pub fn exponent_vector(&self, w: &Word) -> ExponentVector {
        let mut v = vec![0i64; self.rank()];
        for l in w.letters() {
            v[l.generator()] += l.sign();
        }
        ExponentVector(v)
    }

    /// Positions of letters that can be shuffled to the front of reduced `w`.
    pub fn movable_to_front(&self, w: &Word) -> Vec<usize> {
        let mut blocked = FixedBitSet::with_capacity(self.rank());
        let mut out = Vec::new();
        for (i, &l) in w.letters().iter().enumerate() {
            let g = l.generator();
            if !blocked.contains(g) {
                out.push(i);
            }
            // everything not in lk(g) is now blocked, g included
            let mut not_link = self.graph.link(g).clone();
            not_link.toggle_range(..);
            blocked.union_with(&not_link);
            if blocked.is_full() {
                break;
            }
        }
        out
    }

    /// Positions of letters that can be shuffled to the back of reduced `w`.
    pub fn movable_to_back(&self, w: &Word) -> Vec<usize> {
        let mut blocked = FixedBitSet::with_capacity(self.rank());
        let mut out = Vec::new();
        for (i, &l) in w.letters().iter().enumerate().rev() {
            let g = l.generator();
            if !blocked.contains(g) {
                out.push(i);
            }
            let mut not_link = self.graph.link(g).clone();
            not_link.toggle_range(..);
            blocked.union_with(&not_link);
            if blocked.is_full() {
                break;
            }
        }
        out.reverse();
        out
    }

    /// A pair `(i, j)` of positions in reduced `w` with `w[i]` movable to the
    /// front, `w[j] = w[i]^-1` movable to the back, choosing the least such
    /// front letter.
    fn conjugation_pivot(&self, w: &Word) -> Option<(usize, usize)> {
        let front = self.movable_to_front(w);
        let back = self.movable_to_back(w);
        front
            .iter()
            .filter_map(|&i| {
                let target = w.0[i].inverse();
                back.iter().find(|&&j| w.0[j] == target).map(|&j| (i, j))
            })
            .min_by_key(|&(i, _)| w.0[i])
    }

    /// Returns `(core, conjugator)` with `w = conjugator · core · conjugator^-1`
    /// and `core` cyclically reduced (minimal length in the conjugacy class).
    pub fn cyclically_reduce(&self, w: &Word) -> (Word, Word) {
        let mut core = self.reduce(w);
        let mut conjugator = Vec::new();
        while let Some((i, j)) = self.conjugation_pivot(&core) {
            conjugator.push(core.0[i]);
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            core.0.remove(hi);
            core.0.remove(lo);
            core = self.reduce(&core);
        }
        (core, self.normal_form(&Word(conjugator)))
    }

    /// Whether reduced `w` is cyclically reduced.
    pub fn is_cyclically_reduced(&self, w: &Word) -> Result<bool> {
        if !self.is_reduced(w) {
            return Err(Error::NotReduced);
        }
        Ok(self.conjugation_pivot(w).is_none())
    }
}

/// A cyclically reduced word considered up to rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(raag: &Raag, w: Word) -> Result<Self> {
        if raag.is_cyclically_reduced(&w).map_err(|_| Error::NotCyclicallyReduced)? {
            Ok(CyclicWord(w))
        } else {
            Err(Error::NotCyclicallyReduced)
        }
    }

    /// Wraps without checking.
    pub fn new_unchecked(w: Word) -> Self {
        CyclicWord(w)
    }

    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at cyclic position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> Letter {
        self.0 .0[i % self.0.len()]
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |k| self.0.rotated(k))
    }
}

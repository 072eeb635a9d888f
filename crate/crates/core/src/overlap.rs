//! Inverse overlaps in cyclic words representing powers, and a search for
//! translates that reverse a long stretch of the axis.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cube::{UniversalCover, Vertex};
use crate::error::{Error, Result};
use crate::rational::{serde_ratio, Rational};
use crate::word::{CyclicWord, Letter, Raag, Word};

pub const DEFAULT_N_MAX: usize = 4;
pub const DEFAULT_REPS_CAP: usize = 200_000;

pub type WordMap = Box<dyn Fn(&Word) -> Word>;

/// Whether the two occurrences of `u` and `u^-1` may share positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverlapMode {
    #[default]
    Disjoint,
    Any,
}

impl std::str::FromStr for OverlapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disjoint" => Ok(OverlapMode::Disjoint),
            "any" => Ok(OverlapMode::Any),
            other => Err(Error::UnknownMode(other.to_string())),
        }
    }
}

/// Raw witness: `u` starts at `position_u`, its inverse at `position_inverse`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub length: usize,
    pub u: Word,
    pub position_u: usize,
    pub position_inverse: usize,
}

/// Longest `u` such that `u` and `u^-1` both occur in the cyclic word.
///
/// For an end position `e` of `u` and a start `q` of `u^-1`, the admissible
/// lengths are those `ℓ` with `w[q + j] = w[e - j]^-1` for `j < ℓ`; these runs
/// are read off each diagonal `e + q = const` in one pass.
pub fn max_inverse_overlap(w: &CyclicWord, mode: OverlapMode) -> Option<Overlap> {
    let len = w.len();
    if len == 0 {
        return None;
    }
    let matches = |e: usize, q: usize| w.at(q) == w.at(e).inverse();
    let mut best: Option<(usize, usize, usize)> = None;
    // run[e][q] for q = (d - e) mod len, computed per diagonal d
    let mut run = vec![vec![0usize; len]; len];
    for d in 0..len {
        let q_of = |e: usize| (d + len - e) % len;
        let start = (0..len).find(|&e| !matches(e, q_of(e)));
        let Some(start) = start else {
            for (e, row) in run.iter_mut().enumerate() {
                row[q_of(e)] = len;
            }
            continue;
        };
        let mut r = 0usize;
        for k in 1..=len {
            let e = (start + k) % len;
            r = if matches(e, q_of(e)) { r + 1 } else { 0 };
            run[e][q_of(e)] = r;
        }
    }
    for (e, row) in run.iter().enumerate() {
        for (q, &r) in row.iter().enumerate() {
            let limit = match mode {
                OverlapMode::Any => r.min(len),
                OverlapMode::Disjoint => {
                    let delta = (q + len - e) % len;
                    if delta == 0 {
                        0
                    } else {
                        r.min((len - delta).div_ceil(2))
                    }
                }
            };
            if limit > best.map_or(0, |b| b.0) {
                best = Some((limit, e, q));
            }
        }
    }
    best.map(|(length, e, q)| {
        let p = (e + len + 1 - length) % len;
        let u = Word::from_letters((0..length).map(|j| w.at(p + j)).collect());
        Overlap { length, u, position_u: p, position_inverse: q }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: String,
    pub position_u: usize,
    pub position_inverse: usize,
    pub representative: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub graph: String,
    pub g: String,
    pub n: usize,
    pub mode: OverlapMode,
    pub representatives_checked: usize,
    pub exhaustive: bool,
    pub max_overlap_length: usize,
    pub witness: Option<Witness>,
    #[serde(with = "serde_ratio")]
    pub bound: Rational,
    pub violated: bool,
}

/// Every word reachable from `w0` by rotations and swaps of adjacent
/// commuting letters, breadth first, stopping at `cap` words.
pub fn representative_closure(raag: &Raag, w0: &Word, cap: usize) -> (Vec<Word>, bool) {
    let mut seen: HashSet<Word> = HashSet::from([w0.clone()]);
    let mut order = vec![w0.clone()];
    let mut queue = VecDeque::from([w0.clone()]);
    while let Some(w) = queue.pop_front() {
        let l = w.letters();
        let rot = w.rotated(1);
        let swaps = (1..l.len()).filter(|&i| raag.commute(l[i - 1], l[i])).map(|i| {
            let mut s = l.to_vec();
            s.swap(i - 1, i);
            Word::from_letters(s)
        });
        for next in std::iter::once(rot).chain(swaps) {
            if seen.contains(&next) {
                continue;
            }
            if order.len() >= cap {
                return (order, false);
            }
            seen.insert(next.clone());
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    (order, true)
}

/// Least rotation of `w`.
pub fn least_rotation(w: &Word) -> Word {
    (0..w.len().max(1)).map(|k| w.rotated(k)).min().expect("at least one rotation")
}

/// The same closure as [`representative_closure`], modulo rotation: each
/// cyclic word is visited once, as its least rotation. `visit` returns
/// `false` to stop early. Returns the number visited and whether the walk
/// ran to completion.
pub fn walk_cyclic_closure(
    raag: &Raag,
    w0: &Word,
    cap: usize,
    mut visit: impl FnMut(&Word) -> bool,
) -> (usize, bool) {
    let start = least_rotation(w0);
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut visited = 0;
    while let Some(w) = queue.pop_front() {
        visited += 1;
        if !visit(&w) {
            return (visited, false);
        }
        let l = w.letters();
        let len = l.len();
        // swaps at every cyclic position, including the wrap-around pair
        for i in 0..len {
            let j = (i + 1) % len;
            if len < 2 || !raag.commute(l[i], l[j]) {
                continue;
            }
            let mut s = l.to_vec();
            s.swap(i, j);
            let next = least_rotation(&Word::from_letters(s));
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= cap {
                return (visited, false);
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    (visited, true)
}

/// Class-invariant ceiling on disjoint inverse overlaps: `u` and `u^-1`
/// together use `c_u(x) + c_u(x^-1)` copies of each of `x` and `x^-1`.
pub fn overlap_ceiling(raag: &Raag, w: &Word) -> usize {
    let mut counts = vec![[0usize; 2]; raag.rank()];
    for l in w.letters() {
        counts[l.generator()][l.is_inverse() as usize] += 1;
    }
    counts.iter().map(|c| c[0].min(c[1])).sum()
}

/// Checks `|u| ≤ |w|/(2n)` for every representative `w` of the conjugacy
/// class of `g^n`, for `1 ≤ n ≤ n_max`.
///
/// Representatives are scanned modulo rotation and the scan stops once the
/// overlap reaches [`overlap_ceiling`] (disjoint mode) or `|w|` (any mode),
/// since no representative can exceed it. `exhaustive` is true when the
/// reported maximum is exact for the whole class; `representatives_checked`
/// counts cyclic words examined.
pub fn verify_key_lemma(
    raag: &Raag,
    g: &Word,
    n_max: usize,
    reps_cap: usize,
    mode: OverlapMode,
) -> Result<Vec<OverlapReport>> {
    raag.check_word(g)?;
    if raag.reduce(g).is_empty() {
        return Err(Error::TrivialElement);
    }
    let mut reports = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let (w0, _) = raag.cyclically_reduce(&raag.power(g, n));
        let ceiling = match mode {
            OverlapMode::Disjoint => overlap_ceiling(raag, &w0),
            OverlapMode::Any => w0.len(),
        };
        let mut best: Option<(Overlap, Word)> = None;
        let mut max = 0;
        let (checked, complete) = walk_cyclic_closure(raag, &w0, reps_cap, |rep| {
            if let Some(o) = max_inverse_overlap(&CyclicWord::new_unchecked(rep.clone()), mode) {
                if o.length > max {
                    max = o.length;
                    best = Some((o, rep.clone()));
                }
            }
            max < ceiling
        });
        let exhaustive = complete || max >= ceiling;
        let bound = Rational::new(w0.len() as i64, 2 * n as i64);
        reports.push(OverlapReport {
            graph: raag.graph().to_text(),
            g: raag.format_word(g),
            n,
            mode,
            representatives_checked: checked,
            exhaustive,
            max_overlap_length: max,
            witness: best.map(|(o, rep)| Witness {
                u: raag.format_word(&o.u),
                position_u: o.position_u,
                position_inverse: o.position_inverse,
                representative: raag.format_word(&rep),
            }),
            bound,
            violated: Rational::from_integer(max as i64) > bound,
        });
    }
    Ok(reports)
}

/// Cyclically reduced words of length `len` (all rotations included).
fn cyclically_reduced_words(raag: &Raag, len: usize) -> Vec<Word> {
    fn extend(raag: &Raag, prefix: &mut Vec<Letter>, len: usize, out: &mut Vec<Word>) {
        if prefix.len() == len {
            let w = Word::from_letters(prefix.clone());
            if raag.is_cyclically_reduced(&w).unwrap_or(false) {
                out.push(w);
            }
            return;
        }
        for l in raag.alphabet() {
            let cancels = prefix
                .iter()
                .rev()
                .take_while(|&&m| m == l.inverse() || raag.commute(m, l))
                .any(|&m| m == l.inverse());
            if !cancels {
                prefix.push(l);
                extend(raag, prefix, len, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(raag, &mut Vec::with_capacity(len), len, &mut out);
    out
}

/// One representative per conjugacy class of nontrivial elements whose
/// cyclically reduced length is at most `max_len`: the least word of each
/// rotation-and-swap class.
pub fn conjugacy_class_representatives(raag: &Raag, max_len: usize) -> Vec<Word> {
    classes(raag, max_len).0
}

fn classes(raag: &Raag, max_len: usize) -> (Vec<Word>, HashMap<Word, usize>) {
    let mut reps = Vec::new();
    let mut class_of: HashMap<Word, usize> = HashMap::new();
    for len in 1..=max_len {
        for w in cyclically_reduced_words(raag, len) {
            if class_of.contains_key(&w) {
                continue;
            }
            let (members, _) = representative_closure(raag, &w, usize::MAX);
            let id = reps.len();
            reps.push(members.iter().min().expect("nonempty").clone());
            for m in members {
                class_of.insert(m, id);
            }
        }
    }
    (reps, class_of)
}

/// Maps of words that preserve the overlap question: graph automorphisms,
/// inverting any subset of generators, and formal inversion.
pub fn word_symmetries(raag: &Raag) -> Vec<WordMap> {
    let n = raag.rank();
    let mut out: Vec<WordMap> = Vec::new();
    for perm in raag.graph().automorphisms() {
        for flips in 0u64..(1u64 << n) {
            for invert in [false, true] {
                let perm = perm.clone();
                out.push(Box::new(move |w: &Word| {
                    let mapped = Word::from_letters(
                        w.letters()
                            .iter()
                            .map(|l| Letter::new(perm[l.generator()], l.is_inverse() ^ (flips >> l.generator() & 1 == 1)))
                            .collect(),
                    );
                    if invert {
                        mapped.formal_inverse()
                    } else {
                        mapped
                    }
                }));
            }
        }
    }
    out
}

/// One representative per orbit of conjugacy classes under
/// [`word_symmetries`].
pub fn conjugacy_class_representatives_up_to_symmetry(raag: &Raag, max_len: usize) -> Vec<Word> {
    let (reps, class_of) = classes(raag, max_len);
    let symmetries = word_symmetries(raag);
    let mut covered = vec![false; reps.len()];
    let mut out = Vec::new();
    for (id, rep) in reps.iter().enumerate() {
        if covered[id] {
            continue;
        }
        out.push(rep.clone());
        for s in &symmetries {
            covered[class_of[&s(rep)]] = true;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoOverlapViolation {
    pub x: String,
    pub y: String,
    pub f: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoOverlapSearchReport {
    pub g: String,
    pub pairs: usize,
    pub elements: usize,
    pub triples: usize,
    pub violations: Vec<NoOverlapViolation>,
}

impl NoOverlapSearchReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All elements of length at most `radius`, in normal form.
pub fn ball(raag: &Raag, radius: usize) -> Vec<Word> {
    let mut seen: HashSet<Word> = HashSet::from([Word::identity()]);
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for l in raag.alphabet() {
                let mut u = w.clone();
                u.push(l);
                let u = raag.normal_form(&u);
                if u.len() == w.len() + 1 && seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Searches for `f` with `|f| ≤ radius` and axis vertices `x, y` with
/// `|[x, y]| > |g|/2` such that `[f·y, f·x] ⊂ A_g^+`.
///
/// Pairs start at axis positions `t ∈ [-|g|, |g|)` and have lengths in
/// `(|g|/2, 2|g|]`. With `samples = None` every triple is examined;
/// otherwise `samples` random triples drawn with `seed`.
pub fn search_prop_noov_violation(
    cover: &UniversalCover,
    g: &Word,
    radius: usize,
    samples: Option<usize>,
    seed: u64,
) -> Result<NoOverlapSearchReport> {
    use rand::{Rng, SeedableRng};
    let raag = cover.raag();
    let period = g.len() as i64;
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    for t in -period..period {
        for span in (period / 2 + 1)..=(2 * period) {
            pairs.push((cover.axis_vertex(g, t)?, cover.axis_vertex(g, t + span)?));
        }
    }
    let elements = ball(raag, radius);
    let mut report = NoOverlapSearchReport {
        g: raag.format_word(g),
        pairs: pairs.len(),
        elements: elements.len(),
        ..Default::default()
    };
    let check = |x: &Vertex, y: &Vertex, f: &Word, report: &mut NoOverlapSearchReport| -> Result<()> {
        report.triples += 1;
        let fx = cover.translate(&cover.identity(), &f.then(x.word()));
        let fy = cover.translate(&cover.identity(), &f.then(y.word()));
        for h in cover.interval(&fy, &fx).halfspaces {
            if !cover.in_a_g_plus(g, &h)? {
                return Ok(());
            }
        }
        report.violations.push(NoOverlapViolation {
            x: raag.format_word(x.word()),
            y: raag.format_word(y.word()),
            f: raag.format_word(f),
        });
        Ok(())
    };
    match samples {
        None => {
            for (x, y) in &pairs {
                for f in &elements {
                    check(x, y, f, &mut report)?;
                }
            }
        }
        Some(k) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..k {
                let (x, y) = &pairs[rng.gen_range(0..pairs.len())];
                let f = &elements[rng.gen_range(0..elements.len())];
                check(x, y, f, &mut report)?;
            }
        }
    }
    Ok(report)
}

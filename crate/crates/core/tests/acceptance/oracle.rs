//! Reference structures that share no code with the library's reduction.
//!
//! An element is stored as a pile: one stack per generator. Appending a
//! letter of generator `a` pushes the letter on stack `a` and a blocker on
//! the stack of every generator not commuting with `a`. If the top of
//! stack `a` is already the inverse letter, everything after it commutes
//! with `a`, so the letter and its blockers are popped instead. Two words
//! are equal in the group exactly when their piles coincide.

use std::collections::{HashMap, VecDeque};

use raag_core::{DefiningGraph, Letter, Word};

const BLOCK: i8 = 0;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pile(Vec<Vec<i8>>);

impl Pile {
    /// Number of letters; equals the geodesic length of the element.
    pub fn letters(&self) -> usize {
        self.0.iter().map(|s| s.iter().filter(|&&t| t != BLOCK).count()).sum()
    }
}

pub struct Piling {
    rank: usize,
    /// `blocked[a]`: generators other than `a` that do not commute with it
    blocked: Vec<Vec<usize>>,
}

impl Piling {
    pub fn new(g: &DefiningGraph) -> Self {
        let rank = g.len();
        let blocked = (0..rank).map(|a| (0..rank).filter(|&b| b != a && !g.are_adjacent(a, b)).collect()).collect();
        Piling { rank, blocked }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> Pile {
        Pile(vec![Vec::new(); self.rank])
    }

    pub fn push(&self, p: &mut Pile, gen: usize, inverse: bool) {
        let tok: i8 = if inverse { -1 } else { 1 };
        if p.0[gen].last() == Some(&-tok) {
            p.0[gen].pop();
            for &b in &self.blocked[gen] {
                let top = p.0[b].pop();
                debug_assert_eq!(top, Some(BLOCK));
            }
        } else {
            p.0[gen].push(tok);
            for &b in &self.blocked[gen] {
                p.0[b].push(BLOCK);
            }
        }
    }

    pub fn times(&self, p: &Pile, gen: usize, inverse: bool) -> Pile {
        let mut q = p.clone();
        self.push(&mut q, gen, inverse);
        q
    }

    pub fn append(&self, p: &mut Pile, w: &Word) {
        for l in w.letters() {
            self.push(p, l.generator(), l.is_inverse());
        }
    }

    pub fn of(&self, w: &Word) -> Pile {
        let mut p = self.identity();
        self.append(&mut p, w);
        p
    }

    /// Pile of `u^-1 v`.
    pub fn quotient(&self, u: &Word, v: &Word) -> Pile {
        let mut p = self.identity();
        for l in u.letters().iter().rev() {
            self.push(&mut p, l.generator(), !l.is_inverse());
        }
        self.append(&mut p, v);
        p
    }

    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> {
        let rank = self.rank;
        (0..rank).flat_map(|g| [(g, false), (g, true)])
    }
}

/// Breadth-first ball in the Cayley graph: each element's distance from the
/// identity and one word of that length reaching it.
pub struct Ball {
    pub radius: usize,
    pub dist: HashMap<Pile, (usize, Word)>,
}

impl Ball {
    pub fn new(piling: &Piling, radius: usize) -> Self {
        let mut dist = HashMap::from([(piling.identity(), (0, Word::identity()))]);
        let mut queue = VecDeque::from([piling.identity()]);
        while let Some(p) = queue.pop_front() {
            let (d, w) = dist[&p].clone();
            if d == radius {
                continue;
            }
            for (g, inv) in piling.letters() {
                let q = piling.times(&p, g, inv);
                if !dist.contains_key(&q) {
                    let mut wq = w.clone();
                    wq.push(Letter::new(g, inv));
                    dist.insert(q.clone(), (d + 1, wq));
                    queue.push_back(q);
                }
            }
        }
        Ball { radius, dist }
    }

    pub fn distance(&self, p: &Pile) -> Option<usize> {
        self.dist.get(p).map(|e| e.0)
    }

    /// Exact distance from the identity to `p`, given an upper bound
    /// `upper ≤ radius + r` where `r` is searched around `p`.
    pub fn distance_with_upper(&self, piling: &Piling, p: &Pile, upper: usize) -> usize {
        let r = upper.saturating_sub(self.radius);
        let mut best = usize::MAX;
        let mut seen = HashMap::from([(p.clone(), 0usize)]);
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(q) = queue.pop_front() {
            let k = seen[&q];
            if let Some(d) = self.distance(&q) {
                best = best.min(k + d);
            }
            if k == r {
                continue;
            }
            for (g, inv) in piling.letters() {
                let s = piling.times(&q, g, inv);
                if !seen.contains_key(&s) {
                    seen.insert(s.clone(), k + 1);
                    queue.push_back(s);
                }
            }
        }
        best
    }
}

/// Union-find over positive edges `(x, a)` with `x` in the ball, merging the
/// two parallel sides of every square `x, xa, xba, xb` with `b` commuting
/// with `a` and both `x`, `xb` in the ball. Keys are `(pile of x, a)`.
pub fn square_crawl(piling: &Piling, ball: &Ball, adjacent: impl Fn(usize, usize) -> bool) -> HashMap<(Pile, usize), usize> {
    let n = piling.rank();
    let verts: Vec<&Pile> = ball.dist.keys().collect();
    let index: HashMap<&Pile, usize> = verts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len() * n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, x) in verts.iter().enumerate() {
        for b in 0..n {
            let y = piling.times(x, b, false);
            let Some(&j) = index.get(&y) else { continue };
            for a in (0..n).filter(|&a| a != b && adjacent(a, b)) {
                let (ri, rj) = (find(&mut parent, i * n + a), find(&mut parent, j * n + a));
                parent[ri] = rj;
            }
        }
    }
    let mut out = HashMap::new();
    for (i, x) in verts.iter().enumerate() {
        for a in 0..n {
            let r = find(&mut parent, i * n + a);
            out.insert(((*x).clone(), a), r);
        }
    }
    out
}

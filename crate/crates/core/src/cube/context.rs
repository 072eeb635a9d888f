//! Finite convex contexts for crossing and nesting relations.
//!
//! A context is the convex hull of finitely many vertices. Every hyperplane
//! meeting the hull separates two of its generating points, and relations
//! between half-spaces meeting a convex subcomplex can be read off from the
//! hull: two half-spaces cross iff all four quadrants contain hull vertices,
//! and anything nested between two such half-spaces meets the hull as well.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::{HalfSpace, Interval, UniversalCover, Vertex};
use crate::error::{Error, Result};
use crate::word::Word;

/// Default vertex cap for hull enumeration.
pub const DEFAULT_HULL_CAP: usize = 100_000;

/// Result of a nesting query for distinct half-spaces `H`, `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nesting {
    /// `H ⊃ K`
    Contains,
    /// `K ⊃ H`
    ContainedIn,
}

/// A strictly decreasing sequence `H_0 ⊃ H_1 ⊃ ... ⊃ H_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub halfspaces: Vec<HalfSpace>,
    pub taut: bool,
}

impl Chain {
    /// `n`, the number of interior half-spaces.
    pub fn length(&self) -> usize {
        self.halfspaces.len().saturating_sub(2)
    }

    /// `H_m` with `m = n/2` for even `n` and `(n+1)/2` for odd `n`.
    pub fn midpoint(&self) -> Result<&HalfSpace> {
        let n = self.length();
        if n == 0 {
            return Err(Error::ChainTooShort(n));
        }
        let m = n.div_ceil(2);
        Ok(&self.halfspaces[m])
    }
}

/// Convex hull of a finite vertex set together with the side of every meeting
/// hyperplane on which each hull vertex lies.
#[derive(Clone, Debug)]
pub struct Context {
    anchor: Vertex,
    halfspaces: Vec<HalfSpace>,
    index: HashMap<HalfSpace, usize>,
    vertices: Vec<Vertex>,
    inside: Vec<FixedBitSet>,
}

impl UniversalCover {
    /// Convex hull of `points`. The first point is the anchor; every stored
    /// half-space is oriented away from it.
    pub fn hull(&self, points: &[Vertex]) -> Result<Context> {
        let anchor = points.first().cloned().unwrap_or_else(|| self.identity());
        let mut halfspaces = Vec::new();
        let mut index = HashMap::new();
        for p in points {
            for h in self.interval(&anchor, p).halfspaces {
                if !index.contains_key(&h) {
                    index.insert(h.clone(), halfspaces.len());
                    halfspaces.push(h);
                }
            }
        }
        let m = halfspaces.len();

        // BFS away from the anchor, crossing only hyperplanes of the hull.
        let raag = self.raag();
        let mut vertices = vec![anchor.clone()];
        let mut crossed = vec![FixedBitSet::with_capacity(m)];
        let mut relative = vec![Word::identity()];
        let mut seen: HashMap<Word, usize> = HashMap::from([(anchor.0.clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(z) = queue.pop_front() {
            for l in raag.alphabet() {
                let mut rel = relative[z].clone();
                rel.push(l);
                let rel = raag.reduce(&rel);
                if rel.len() != relative[z].len() + 1 {
                    continue;
                }
                let h = self.halfspace_of_edge(&vertices[z], l);
                let Some(&i) = index.get(&h) else { continue };
                let next = self.translate(&vertices[z], &Word::from_letters(vec![l]));
                if seen.contains_key(&next.0) {
                    continue;
                }
                if vertices.len() >= self.hull_cap() {
                    return Err(Error::HullTooLarge { cap: self.hull_cap() });
                }
                let mut bits = crossed[z].clone();
                bits.insert(i);
                seen.insert(next.0.clone(), vertices.len());
                queue.push_back(vertices.len());
                vertices.push(next);
                crossed.push(bits);
                relative.push(rel);
            }
        }

        let mut inside = vec![FixedBitSet::with_capacity(vertices.len()); m];
        for (v, bits) in crossed.iter().enumerate() {
            for i in bits.ones() {
                inside[i].insert(v);
            }
        }
        Ok(Context { anchor, halfspaces, index, vertices, inside })
    }

    /// Hull of `{x, y}`: the vertices of all geodesics from `x` to `y`.
    pub fn interval_context(&self, x: &Vertex, y: &Vertex) -> Result<Context> {
        self.hull(&[x.clone(), y.clone()])
    }

    /// Hull of the endpoints of the defining edges of the given half-spaces.
    pub fn edge_hull(&self, halfspaces: &[&HalfSpace]) -> Result<Context> {
        let points: Vec<Vertex> = halfspaces
            .iter()
            .flat_map(|h| {
                let (tail, head) = h.defining_edge();
                [self.vertex(&tail), self.vertex(&head)]
            })
            .collect();
        self.hull(&points)
    }
}

impl Context {
    pub fn anchor(&self) -> &Vertex {
        &self.anchor
    }

    /// Meeting half-spaces, oriented away from the anchor.
    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn contains(&self, h: &HalfSpace) -> bool {
        self.index.contains_key(h) || self.index.contains_key(&h.complement())
    }

    fn locate(&self, h: &HalfSpace) -> Option<(usize, bool)> {
        if let Some(&i) = self.index.get(h) {
            Some((i, true))
        } else {
            self.index.get(&h.complement()).map(|&i| (i, false))
        }
    }

    /// Hull vertices lying in `h`.
    fn members(&self, h: &HalfSpace) -> Result<FixedBitSet> {
        let (i, forward) = self.locate(h).ok_or_else(|| Error::NotInContext(format!("{h:?}")))?;
        let mut set = self.inside[i].clone();
        if !forward {
            set.toggle_range(..);
        }
        Ok(set)
    }

    /// Whether the hyperplanes of `h` and `k` cross.
    pub fn crosses(&self, h: &HalfSpace, k: &HalfSpace) -> Result<bool> {
        let sh = self.members(h)?;
        let sk = self.members(k)?;
        if h.same_hyperplane(k) {
            return Ok(false);
        }
        let mut not_h = sh.clone();
        not_h.toggle_range(..);
        let mut not_k = sk.clone();
        not_k.toggle_range(..);
        Ok(!sh.is_disjoint(&sk) && !sh.is_disjoint(&not_k) && !not_h.is_disjoint(&sk) && !not_h.is_disjoint(&not_k))
    }

    pub fn nesting(&self, h: &HalfSpace, k: &HalfSpace) -> Result<Option<Nesting>> {
        let sh = self.members(h)?;
        let sk = self.members(k)?;
        if h.same_hyperplane(k) {
            return Ok(None);
        }
        Ok(if sk.is_subset(&sh) {
            Some(Nesting::Contains)
        } else if sh.is_subset(&sk) {
            Some(Nesting::ContainedIn)
        } else {
            None
        })
    }

    /// Every half-space `L` of the context with `outer ⊋ L ⊋ inner`.
    fn strictly_between(&self, outer: &FixedBitSet, inner: &FixedBitSet) -> Vec<(HalfSpace, FixedBitSet)> {
        let mut out = Vec::new();
        for (i, h) in self.halfspaces.iter().enumerate() {
            for forward in [true, false] {
                let mut set = self.inside[i].clone();
                if !forward {
                    set.toggle_range(..);
                }
                if set != *outer && set != *inner && inner.is_subset(&set) && set.is_subset(outer) {
                    out.push((if forward { h.clone() } else { h.complement() }, set));
                }
            }
        }
        out
    }

    /// Nested with nothing strictly in between.
    pub fn tightly_nested(&self, h: &HalfSpace, k: &HalfSpace) -> Result<bool> {
        let (outer, inner) = match self.nesting(h, k)? {
            None => return Ok(false),
            Some(Nesting::Contains) => (self.members(h)?, self.members(k)?),
            Some(Nesting::ContainedIn) => (self.members(k)?, self.members(h)?),
        };
        Ok(self.strictly_between(&outer, &inner).is_empty())
    }

    /// Longest-chain layering between `h ⊃ k`: candidates sorted from the
    /// outside in, with the longest distance from `h` and to `k` for each.
    fn chain_layers(&self, h: &HalfSpace, k: &HalfSpace) -> Result<ChainLayers> {
        if self.nesting(h, k)? != Some(Nesting::Contains) {
            return Err(Error::NotNested);
        }
        let outer = self.members(h)?;
        let inner = self.members(k)?;
        let mut nodes = vec![(h.clone(), outer.clone())];
        let mut between = self.strictly_between(&outer, &inner);
        between.sort_by(|a, b| b.1.count_ones(..).cmp(&a.1.count_ones(..)).then(a.0.cmp(&b.0)));
        nodes.extend(between);
        nodes.push((k.clone(), inner));
        let n = nodes.len();
        let above = |i: usize, j: usize| i != j && nodes[j].1.is_subset(&nodes[i].1);
        // from_top[j]: most steps from h to node j
        let mut from_top = vec![0usize; n];
        for j in 1..n {
            from_top[j] = (0..j).filter(|&i| above(i, j)).map(|i| from_top[i] + 1).max().unwrap_or(0);
        }
        let mut to_bottom = vec![0usize; n];
        for i in (0..n - 1).rev() {
            to_bottom[i] = (i + 1..n).filter(|&j| above(i, j)).map(|j| to_bottom[j] + 1).max().unwrap_or(0);
        }
        Ok(ChainLayers { nodes, from_top, to_bottom })
    }

    /// A longest chain from `h` to `k` (requires `h ⊃ k`).
    pub fn longest_chain(&self, h: &HalfSpace, k: &HalfSpace) -> Result<Chain> {
        let layers = self.chain_layers(h, k)?;
        let mut chains = layers.enumerate(1);
        Ok(chains.pop().expect("at least one chain"))
    }

    /// Every longest chain from `h` to `k`, at most `cap` of them.
    pub fn longest_chains(&self, h: &HalfSpace, k: &HalfSpace, cap: usize) -> Result<Vec<Chain>> {
        Ok(self.chain_layers(h, k)?.enumerate(cap))
    }

    /// All nested pairs `(H, K)` with `H ⊃ K` among the stored orientations.
    pub fn nested_pairs(&self) -> Vec<(HalfSpace, HalfSpace)> {
        let mut out = Vec::new();
        for (i, h) in self.halfspaces.iter().enumerate() {
            for (j, k) in self.halfspaces.iter().enumerate() {
                if i != j && self.inside[j].is_subset(&self.inside[i]) {
                    out.push((h.clone(), k.clone()));
                }
            }
        }
        out
    }
}

struct ChainLayers {
    nodes: Vec<(HalfSpace, FixedBitSet)>,
    from_top: Vec<usize>,
    to_bottom: Vec<usize>,
}

impl ChainLayers {
    fn enumerate(&self, cap: usize) -> Vec<Chain> {
        let n = self.nodes.len();
        let total = self.to_bottom[0];
        let on_longest = |i: usize| self.from_top[i] + self.to_bottom[i] == total;
        let mut out = Vec::new();
        let mut path = vec![0usize];
        self.extend(&mut path, &on_longest, n, cap, &mut out);
        out
    }

    fn extend(
        &self,
        path: &mut Vec<usize>,
        on_longest: &dyn Fn(usize) -> bool,
        n: usize,
        cap: usize,
        out: &mut Vec<Chain>,
    ) {
        if out.len() >= cap {
            return;
        }
        let last = *path.last().expect("nonempty path");
        if last == n - 1 {
            let halfspaces = path.iter().map(|&i| self.nodes[i].0.clone()).collect();
            // a longest chain admits no insertion, so it is taut
            out.push(Chain { halfspaces, taut: true });
            return;
        }
        for j in last + 1..n {
            if on_longest(j)
                && self.from_top[j] == self.from_top[last] + 1
                && self.nodes[j].1.is_subset(&self.nodes[last].1)
            {
                path.push(j);
                self.extend(path, on_longest, n, cap, out);
                path.pop();
            }
        }
    }
}

impl Interval {
    /// Context hull of the interval's endpoints.
    pub fn context(&self, cover: &UniversalCover) -> Result<Context> {
        cover.interval_context(&self.from, &self.to)
    }
}

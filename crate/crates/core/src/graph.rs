//! Defining graphs of right-angled Artin groups: parsing, adjacency,
//! triangles and chromatic numbers.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the vertex count for [`ColoringMode::Exact`].
pub const EXACT_VERTEX_CAP: usize = 24;

/// A finite simplicial graph. Vertex order is fixed at construction and is
/// used for every tie-break downstream.
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DefiningGraph({})", self.to_text().replace('\n', "; "))
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `a`, `b`, ..., `z`, then `v26`, `v27`, ...
pub fn default_vertex_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

impl DefiningGraph {
    /// Builds a graph from vertex names and edges given as index pairs.
    pub fn new<S: Into<String>>(names: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Syntax { line: 0, message: format!("invalid vertex name `{name}`") });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex { line: 0, name: name.clone() });
            }
        }
        let n = names.len();
        let mut neighbors = vec![FixedBitSet::with_capacity(n); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertexInEdge { line: 0, name: format!("#{}", u.max(v)) });
            }
            if u == v {
                return Err(Error::LoopEdge { line: 0, name: names[u].clone() });
            }
            if !neighbors[u].contains(v) {
                neighbors[u].insert(v);
                neighbors[v].insert(u);
                list.push((u.min(v), u.max(v)));
            }
        }
        list.sort_unstable();
        Ok(Self { names, index, neighbors, edges: list })
    }

    /// Graph on `n` vertices named `a`, `b`, ... with the given edges.
    pub fn with_default_names(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::new((0..n).map(default_vertex_name).collect(), edges).expect("valid default graph")
    }

    pub fn edgeless(n: usize) -> Self {
        Self::with_default_names(n, &[])
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::with_default_names(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::with_default_names(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::with_default_names(n, &edges)
    }

    /// The Mycielskian of `self`: triangle-free inputs stay triangle-free and
    /// the chromatic number goes up by one.
    pub fn mycielskian(&self) -> Self {
        let n = self.len();
        let mut edges = self.edges.clone();
        for &(u, v) in &self.edges {
            edges.push((u, n + v));
            edges.push((v, n + u));
        }
        for i in 0..n {
            edges.push((n + i, 2 * n));
        }
        Self::with_default_names(2 * n + 1, &edges)
    }

    /// The Grötzsch graph (Mycielskian of the 5-cycle).
    pub fn grotzsch() -> Self {
        Self::cycle(5).mycielskian()
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// vertices: a b c
    /// edges: a-b b-c
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<(usize, Vec<String>)> = None;
        let mut edge_line: Option<(usize, Vec<String>)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line: line_no, message };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(format!("expected `vertices:` or `edges:`, found `{line}`")))?;
            let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match key.trim() {
                "vertices" if names.is_none() => names = Some((line_no, tokens)),
                "vertices" => return Err(syntax("second `vertices:` line".into())),
                "edges" if names.is_none() => {
                    return Err(syntax("`edges:` must follow `vertices:`".into()))
                }
                "edges" if edge_line.is_none() => edge_line = Some((line_no, tokens)),
                "edges" => return Err(syntax("second `edges:` line".into())),
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        let (vline, vertex_names) = names.ok_or(Error::Syntax {
            line: text.lines().count().max(1),
            message: "missing `vertices:` line".into(),
        })?;
        if vertex_names.is_empty() {
            return Err(Error::Syntax { line: vline, message: "graph has no vertices".into() });
        }
        let mut index = HashMap::new();
        for (i, name) in vertex_names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Syntax { line: vline, message: format!("invalid vertex name `{name}`") });
            }
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex { line: vline, name: name.clone() });
            }
        }
        let mut edges = Vec::new();
        if let Some((eline, tokens)) = edge_line {
            for token in &tokens {
                let (u, v) = token.split_once('-').ok_or_else(|| Error::Syntax {
                    line: eline,
                    message: format!("edge `{token}` is not of the form `u-v`"),
                })?;
                let lookup = |name: &str| {
                    index.get(name).copied().ok_or_else(|| Error::UnknownVertexInEdge {
                        line: eline,
                        name: name.to_string(),
                    })
                };
                let (iu, iv) = (lookup(u)?, lookup(v)?);
                if iu == iv {
                    return Err(Error::LoopEdge { line: eline, name: u.to_string() });
                }
                edges.push((iu, iv));
            }
        }
        Self::new(vertex_names, &edges)
    }

    /// Inverse of [`DefiningGraph::parse`].
    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        format!("vertices: {}\nedges: {}\n", self.names.join(" "), edges.join(" "))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Link of `v`: the set of its neighbours.
    pub fn link(&self, v: usize) -> &FixedBitSet {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].count_ones(..)
    }

    /// Index-level adjacency; never true for `u == v`.
    #[inline]
    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].contains(v)
    }

    /// Name-level adjacency.
    pub fn adjacent(&self, a: &str, b: &str) -> Result<bool> {
        let u = self.vertex(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        let v = self.vertex(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
        Ok(self.are_adjacent(u, v))
    }

    /// Graph with one more edge; `None` if the edge is a loop or already present.
    pub fn with_edge(&self, u: usize, v: usize) -> Option<Self> {
        if u == v || self.are_adjacent(u, v) {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Self::new(self.names.clone(), &edges).ok()
    }

    /// Lexicographically first triple of pairwise adjacent vertices.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in self.neighbors[a].ones().filter(|&b| b > a) {
                let mut common = self.neighbors[a].clone();
                common.intersect_with(&self.neighbors[b]);
                if let Some(c) = common.ones().find(|&c| c > b) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// All adjacency-preserving vertex permutations, found by backtracking.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        fn extend(g: &DefiningGraph, perm: &mut Vec<usize>, used: &mut FixedBitSet, out: &mut Vec<Vec<usize>>) {
            let i = perm.len();
            if i == g.len() {
                out.push(perm.clone());
                return;
            }
            for t in 0..g.len() {
                if used.contains(t) || g.degree(t) != g.degree(i) {
                    continue;
                }
                if (0..i).all(|j| g.are_adjacent(i, j) == g.are_adjacent(t, perm[j])) {
                    perm.push(t);
                    used.insert(t);
                    extend(g, perm, used, out);
                    used.set(t, false);
                    perm.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(self, &mut Vec::new(), &mut FixedBitSet::with_capacity(self.len()), &mut out);
        out
    }

    pub fn chromatic_number(&self, mode: ColoringMode) -> Result<ChromaticResult> {
        self.chromatic_number_with_cap(mode, EXACT_VERTEX_CAP)
    }

    pub fn chromatic_number_with_cap(&self, mode: ColoringMode, cap: usize) -> Result<ChromaticResult> {
        let upper = dsatur(self);
        match mode {
            ColoringMode::Heuristic => Ok(ChromaticResult {
                num_colors: upper.num_colors,
                coloring: upper,
                exact: false,
                lower_bound: None,
            }),
            ColoringMode::Exact => {
                if self.len() > cap {
                    return Err(Error::TooLargeForExact { vertices: self.len(), cap });
                }
                exact_chromatic(self, upper)
            }
        }
    }
}

/// A vertex coloring, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub num_colors: usize,
    pub assignment: Vec<usize>,
}

impl Coloring {
    /// Every vertex colored from `0..num_colors` and no edge monochromatic.
    pub fn is_proper(&self, g: &DefiningGraph) -> bool {
        self.assignment.len() == g.len()
            && self.assignment.iter().all(|&c| c < self.num_colors)
            && g.edges().iter().all(|&(u, v)| self.assignment[u] != self.assignment[v])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringMode {
    Exact,
    Heuristic,
}

/// How an exact result certifies its lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBound {
    /// A clique of size `num_colors`.
    Clique(Vec<usize>),
    /// Exhaustive branch-and-bound found no proper `num_colors - 1` coloring.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub num_colors: usize,
    pub coloring: Coloring,
    pub exact: bool,
    pub lower_bound: Option<LowerBound>,
}

/// DSATUR: color the most saturated vertex next, ties by degree then order.
fn dsatur(g: &DefiningGraph) -> Coloring {
    let n = g.len();
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut saturation: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n + 1); n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by(|&u, &v| {
                let key = |x: usize| (saturation[x].count_ones(..), g.degree(x));
                key(u).cmp(&key(v)).then(v.cmp(&u))
            })
            .expect("uncolored vertex");
        let c = (0..=n).find(|&c| !saturation[v].contains(c)).expect("free color");
        color[v] = Some(c);
        used = used.max(c + 1);
        for u in g.link(v).ones() {
            saturation[u].insert(c);
        }
    }
    Coloring { num_colors: used, assignment: color.into_iter().map(|c| c.expect("colored")).collect() }
}

/// Largest clique found by greedy growth from every start vertex.
fn greedy_clique(g: &DefiningGraph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for start in 0..g.len() {
        let mut clique = vec![start];
        let mut candidates = g.link(start).clone();
        while let Some(next) = candidates.ones().max_by(|&u, &v| {
            let gain = |x: usize| {
                let mut c = candidates.clone();
                c.intersect_with(g.link(x));
                c.count_ones(..)
            };
            gain(u).cmp(&gain(v)).then(v.cmp(&u))
        }) {
            clique.push(next);
            candidates.intersect_with(g.link(next));
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

fn exact_chromatic(g: &DefiningGraph, upper: Coloring) -> Result<ChromaticResult> {
    let clique = greedy_clique(g);
    let lower = clique.len().max(usize::from(!g.is_empty()));
    let mut best = upper;
    let mut proof = None;
    while best.num_colors > lower {
        match color_with(g, best.num_colors - 1) {
            Some(better) => best = better,
            None => {
                proof = Some(LowerBound::Exhaustive);
                break;
            }
        }
    }
    let proof = proof.unwrap_or(LowerBound::Clique(clique));
    Ok(ChromaticResult { num_colors: best.num_colors, coloring: best, exact: true, lower_bound: Some(proof) })
}

/// Backtracking search for a proper coloring with at most `k` colors.
fn color_with(g: &DefiningGraph, k: usize) -> Option<Coloring> {
    fn search(
        g: &DefiningGraph,
        k: usize,
        color: &mut Vec<Option<usize>>,
        used: usize,
        remaining: usize,
    ) -> bool {
        if remaining == 0 {
            return true;
        }
        let n = g.len();
        // most saturated uncolored vertex
        let mut pick = None;
        let mut pick_key = (0, 0);
        for v in 0..n {
            if color[v].is_some() {
                continue;
            }
            let mut seen = FixedBitSet::with_capacity(k);
            for u in g.link(v).ones() {
                if let Some(c) = color[u] {
                    seen.insert(c);
                }
            }
            let key = (seen.count_ones(..), g.degree(v));
            if pick.is_none() || key > pick_key {
                pick = Some((v, seen));
                pick_key = key;
            }
        }
        let (v, seen) = pick.expect("uncolored vertex");
        // symmetry breaking: at most one fresh color
        for c in 0..k.min(used + 1) {
            if seen.contains(c) {
                continue;
            }
            color[v] = Some(c);
            if search(g, k, color, used.max(c + 1), remaining - 1) {
                return true;
            }
        }
        color[v] = None;
        false
    }

    let mut color = vec![None; g.len()];
    if k == 0 {
        return g.is_empty().then(|| Coloring { num_colors: 0, assignment: vec![] });
    }
    if !search(g, k, &mut color, 0, g.len()) {
        return None;
    }
    let assignment: Vec<usize> = color.into_iter().map(|c| c.expect("colored")).collect();
    let num_colors = assignment.iter().max().map_or(0, |&m| m + 1);
    Some(Coloring { num_colors, assignment })
}

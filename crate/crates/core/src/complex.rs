//! Angled 2-complexes, their curvatures, and the combinatorial Gauss–Bonnet
//! identity. Angles are exact rationals `q` standing for `qπ`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{serde_ratio_vec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: u64,
    pub ends: [u64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub id: u64,
    /// Signed edge ids in cyclic order; a negative id traverses the edge
    /// from its second end to its first.
    pub boundary: Vec<i64>,
    /// `angles[i]` is the corner at the start of `boundary[i]`, in units of π.
    #[serde(with = "serde_ratio_vec")]
    pub angles: Vec<Rational>,
}

/// The serialized form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub vertices: Vec<u64>,
    pub edges: Vec<EdgeSpec>,
    pub faces: Vec<FaceSpec>,
}

#[derive(Clone, Debug, Default)]
struct VertexData {
    edge_ends: usize,
    corners: usize,
    angle_sum: Rational,
    /// link arcs as pairs of edge-end indices
    arcs: Vec<(usize, usize)>,
    ends: Vec<(usize, u8)>,
}

/// A validated angled 2-complex.
#[derive(Clone, Debug)]
pub struct AngledComplex {
    spec: ComplexSpec,
    vertex_index: HashMap<u64, usize>,
    face_index: HashMap<u64, usize>,
    edge_sides: Vec<usize>,
    data: Vec<VertexData>,
}

fn inconsistent(msg: String) -> Error {
    Error::InconsistentComplex(msg)
}

impl AngledComplex {
    pub fn new(spec: ComplexSpec) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, &v) in spec.vertices.iter().enumerate() {
            if vertex_index.insert(v, i).is_some() {
                return Err(inconsistent(format!("duplicate vertex {v}")));
            }
        }
        let mut edge_index = HashMap::new();
        for (i, e) in spec.edges.iter().enumerate() {
            if e.id == 0 || e.id > i64::MAX as u64 {
                return Err(inconsistent(format!("edge id {} is out of range", e.id)));
            }
            if edge_index.insert(e.id, i).is_some() {
                return Err(inconsistent(format!("duplicate edge {}", e.id)));
            }
            for end in e.ends {
                if !vertex_index.contains_key(&end) {
                    return Err(inconsistent(format!("edge {} ends at unknown vertex {end}", e.id)));
                }
            }
        }
        let mut data = vec![VertexData::default(); spec.vertices.len()];
        // edge-end nodes: (edge index, end) at vertex
        let mut end_node: HashMap<(usize, u8), usize> = HashMap::new();
        for (i, e) in spec.edges.iter().enumerate() {
            for (k, end) in e.ends.iter().enumerate() {
                let d = &mut data[vertex_index[end]];
                end_node.insert((i, k as u8), d.ends.len());
                d.ends.push((i, k as u8));
                d.edge_ends += 1;
            }
        }
        let mut face_index = HashMap::new();
        let mut edge_sides = vec![0usize; spec.edges.len()];
        for (fi, f) in spec.faces.iter().enumerate() {
            if face_index.insert(f.id, fi).is_some() {
                return Err(inconsistent(format!("duplicate face {}", f.id)));
            }
            if f.boundary.is_empty() {
                return Err(inconsistent(format!("face {} has an empty boundary", f.id)));
            }
            if f.angles.len() != f.boundary.len() {
                return Err(inconsistent(format!(
                    "face {} has {} boundary edges but {} angles",
                    f.id,
                    f.boundary.len(),
                    f.angles.len()
                )));
            }
            // (edge index, start end, finish end)
            let mut sides = Vec::with_capacity(f.boundary.len());
            for &s in &f.boundary {
                let &ei = edge_index
                    .get(&s.unsigned_abs())
                    .ok_or_else(|| inconsistent(format!("face {} uses unknown edge {}", f.id, s)))?;
                edge_sides[ei] += 1;
                sides.push(if s > 0 { (ei, 0u8, 1u8) } else { (ei, 1, 0) });
            }
            let p = sides.len();
            for i in 0..p {
                let (e_prev, _, fin) = sides[(i + p - 1) % p];
                let (e_here, start, _) = sides[i];
                let head = spec.edges[e_prev].ends[fin as usize];
                let tail = spec.edges[e_here].ends[start as usize];
                if head != tail {
                    return Err(inconsistent(format!("face {} boundary is not closed at side {i}", f.id)));
                }
                let d = &mut data[vertex_index[&tail]];
                d.corners += 1;
                d.angle_sum += f.angles[i];
                d.arcs.push((end_node[&(e_prev, fin)], end_node[&(e_here, start)]));
            }
        }
        Ok(AngledComplex { spec, vertex_index, face_index, edge_sides, data })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ComplexSpec = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.spec).expect("complex serializes")
    }

    pub fn spec(&self) -> &ComplexSpec {
        &self.spec
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.spec.vertices.len() as i64 - self.spec.edges.len() as i64 + self.spec.faces.len() as i64
    }

    fn vertex_data(&self, v: u64) -> Result<&VertexData> {
        self.vertex_index.get(&v).map(|&i| &self.data[i]).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// `χ(Link(v))` as nodes minus arcs.
    pub fn link_euler_characteristic(&self, v: u64) -> Result<i64> {
        let d = self.vertex_data(v)?;
        Ok(d.edge_ends as i64 - d.corners as i64)
    }

    /// Whether the link of `v` is a single circle.
    pub fn is_interior_vertex(&self, v: u64) -> Result<bool> {
        let d = self.vertex_data(v)?;
        if d.ends.is_empty() {
            return Ok(false);
        }
        let mut degree = vec![0usize; d.ends.len()];
        let mut parent: Vec<usize> = (0..d.ends.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(a, b) in &d.arcs {
            degree[a] += 1;
            degree[b] += 1;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        Ok(degree.iter().all(|&k| k == 2) && (0..d.ends.len()).all(|i| find(&mut parent, i) == root))
    }

    /// Edges met by exactly one face side.
    pub fn boundary_edges(&self) -> Vec<u64> {
        self.spec.edges.iter().zip(&self.edge_sides).filter(|(_, &k)| k == 1).map(|(e, _)| e.id).collect()
    }

    /// `κ(v) = 2π − πχ(Link v) − Σ ∠c`, in units of π.
    pub fn curvature_vertex(&self, v: u64) -> Result<Rational> {
        let d = self.vertex_data(v)?;
        let chi = d.edge_ends as i64 - d.corners as i64;
        Ok(Rational::from_integer(2 - chi) - d.angle_sum)
    }

    /// `κ(f) = Σ ∠c − (P(f) − 2)π`, in units of π.
    pub fn curvature_face(&self, f: u64) -> Result<Rational> {
        let &fi = self.face_index.get(&f).ok_or(Error::UnknownFace(f))?;
        let face = &self.spec.faces[fi];
        let sum: Rational = face.angles.iter().sum();
        Ok(sum - Rational::from_integer(face.boundary.len() as i64 - 2))
    }

    pub fn total_curvature(&self) -> Rational {
        let v: Rational = self.spec.vertices.iter().map(|&v| self.curvature_vertex(v).expect("known vertex")).sum();
        let f: Rational = self.spec.faces.iter().map(|f| self.curvature_face(f.id).expect("known face")).sum();
        v + f
    }

    /// `Σκ(v) + Σκ(f) − 2πχ(X)`, in units of π.
    pub fn gauss_bonnet_residual(&self) -> Rational {
        self.total_curvature() - Rational::from_integer(2 * self.euler_characteristic())
    }
}

/// `1 + Σ (s_f − 4)/4`.
pub fn genus_defect_from_faces(side_counts: &[usize]) -> Result<Rational> {
    let mut total = Rational::from_integer(1);
    for &s in side_counts {
        if s < 4 {
            return Err(Error::SideCountBelowFour(s));
        }
        total += Rational::new(s as i64 - 4, 4);
    }
    Ok(total)
}

/// Incremental construction with sequential ids: vertices from 0, edges and
/// faces from 1.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    spec: ComplexSpec,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_spec(spec: ComplexSpec) -> Self {
        ComplexBuilder { spec }
    }

    pub fn add_vertex(&mut self) -> u64 {
        let id = self.spec.vertices.iter().max().map_or(0, |m| m + 1);
        self.spec.vertices.push(id);
        id
    }

    pub fn add_vertices(&mut self, n: usize) -> Vec<u64> {
        (0..n).map(|_| self.add_vertex()).collect()
    }

    pub fn add_edge(&mut self, u: u64, v: u64) -> i64 {
        let id = self.spec.edges.iter().map(|e| e.id).max().unwrap_or(0) + 1;
        self.spec.edges.push(EdgeSpec { id, ends: [u, v] });
        id as i64
    }

    pub fn add_face(&mut self, boundary: Vec<i64>, angles: Vec<Rational>) -> u64 {
        let id = self.spec.faces.iter().map(|f| f.id).max().unwrap_or(0) + 1;
        self.spec.faces.push(FaceSpec { id, boundary, angles });
        id
    }

    /// A face with every angle equal to `angle`.
    pub fn add_uniform_face(&mut self, boundary: Vec<i64>, angle: Rational) -> u64 {
        let n = boundary.len();
        self.add_face(boundary, vec![angle; n])
    }

    fn edge(&self, id: i64) -> &EdgeSpec {
        self.spec.edges.iter().find(|e| e.id == id.unsigned_abs()).expect("known edge")
    }

    fn start(&self, side: i64) -> u64 {
        let e = self.edge(side);
        if side > 0 {
            e.ends[0]
        } else {
            e.ends[1]
        }
    }

    /// Inserts a vertex in the middle of edge `e`. New corners get the angle
    /// returned by `angle` for each face side through the edge.
    pub fn split_edge(&mut self, e: u64, mut angle: impl FnMut() -> Rational) -> u64 {
        let w = self.add_vertex();
        let pos = self.spec.edges.iter().position(|x| x.id == e).expect("known edge");
        let v = self.spec.edges[pos].ends[1];
        self.spec.edges[pos].ends[1] = w;
        let e2 = self.add_edge(w, v);
        let e = e as i64;
        for f in &mut self.spec.faces {
            let mut i = 0;
            while i < f.boundary.len() {
                let s = f.boundary[i];
                if s == e {
                    f.boundary.insert(i + 1, e2);
                    f.angles.insert(i + 1, angle());
                    i += 2;
                } else if s == -e {
                    f.boundary[i] = -e2;
                    f.boundary.insert(i + 1, -e);
                    f.angles.insert(i + 1, angle());
                    i += 2;
                } else {
                    i += 1;
                }
            }
        }
        w
    }

    /// Cuts face `f` along a new edge from the corner at side `i` to the
    /// corner at side `j` (`i < j`). Each cut corner is divided with
    /// `split`, which receives the old angle and returns the two parts.
    pub fn split_face(&mut self, f: u64, i: usize, j: usize, mut split: impl FnMut(Rational) -> (Rational, Rational)) -> u64 {
        let fi = self.spec.faces.iter().position(|x| x.id == f).expect("known face");
        let face = self.spec.faces[fi].clone();
        assert!(i < j && j < face.boundary.len());
        let (a, b) = (self.start(face.boundary[i]), self.start(face.boundary[j]));
        let d = self.add_edge(a, b);
        let (ai1, ai2) = split(face.angles[i]);
        let (aj1, aj2) = split(face.angles[j]);
        // first piece: sides i..j then back along -d
        let mut b1: Vec<i64> = face.boundary[i..j].to_vec();
        let mut an1: Vec<Rational> = face.angles[i..j].to_vec();
        an1[0] = ai1;
        b1.push(-d);
        an1.push(aj1);
        // second piece: sides j.., ..i then +d
        let mut b2: Vec<i64> = face.boundary[j..].iter().chain(&face.boundary[..i]).copied().collect();
        let mut an2: Vec<Rational> = face.angles[j..].iter().chain(&face.angles[..i]).copied().collect();
        an2[0] = aj2;
        b2.push(d);
        an2.push(ai2);
        self.spec.faces[fi].boundary = b1;
        self.spec.faces[fi].angles = an1;
        self.add_face(b2, an2)
    }

    pub fn spec(&self) -> &ComplexSpec {
        &self.spec
    }

    pub fn build(self) -> Result<AngledComplex> {
        AngledComplex::new(self.spec)
    }
}

/// Constructed examples.
pub mod library {
    use super::*;

    fn right() -> Rational {
        Rational::new(1, 2)
    }

    /// Square grid on `m × n` cells; `wrap_x`/`wrap_y` identify opposite sides.
    fn grid(m: usize, n: usize, wrap_x: bool, wrap_y: bool) -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        let (vx, vy) = (if wrap_x { m } else { m + 1 }, if wrap_y { n } else { n + 1 });
        let verts = b.add_vertices(vx * vy);
        let at = |i: usize, j: usize| verts[(i % vx) * vy + (j % vy)];
        let mut h = BTreeMap::new();
        let mut v = BTreeMap::new();
        for i in 0..vx {
            for j in 0..vy {
                if wrap_x || i < m {
                    h.insert((i, j), b.add_edge(at(i, j), at(i + 1, j)));
                }
                if wrap_y || j < n {
                    v.insert((i, j), b.add_edge(at(i, j), at(i, j + 1)));
                }
            }
        }
        for i in 0..m {
            for j in 0..n {
                let top = h[&(i, (j + 1) % vy)];
                let right_side = v[&((i + 1) % vx, j)];
                b.add_uniform_face(vec![h[&(i, j)], right_side, -top, -v[&(i, j)]], right());
            }
        }
        b
    }

    pub fn torus(m: usize, n: usize) -> ComplexBuilder {
        grid(m, n, true, true)
    }

    pub fn disk(m: usize, n: usize) -> ComplexBuilder {
        grid(m, n, false, false)
    }

    /// `m` cells around, `n` cells across.
    pub fn annulus(m: usize, n: usize) -> ComplexBuilder {
        grid(m, n, true, false)
    }

    /// A single `p`-gon with right angles.
    pub fn polygon(p: usize) -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        let verts = b.add_vertices(p);
        let edges: Vec<i64> = (0..p).map(|i| b.add_edge(verts[i], verts[(i + 1) % p])).collect();
        b.add_uniform_face(edges, right());
        b
    }

    /// Boundary of the cube.
    pub fn cube_surface() -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        let verts = b.add_vertices(8);
        let mut edge = HashMap::new();
        for x in 0..8usize {
            for bit in [1, 2, 4] {
                if x & bit == 0 {
                    edge.insert((x, x | bit), b.add_edge(verts[x], verts[x | bit]));
                }
            }
        }
        let side = |x: usize, y: usize| if x < y { edge[&(x, y)] } else { -edge[&(y, x)] };
        for bit in [1usize, 2, 4] {
            let others: Vec<usize> = [1usize, 2, 4].into_iter().filter(|&o| o != bit).collect();
            for fixed in [0, bit] {
                let cyc = [fixed, fixed | others[0], fixed | others[0] | others[1], fixed | others[1]];
                let boundary = (0..4).map(|k| side(cyc[k], cyc[(k + 1) % 4])).collect();
                b.add_uniform_face(boundary, right());
            }
        }
        b
    }

    /// One vertex, the octagon `a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹` cut by two
    /// diagonals into three quadrilaterals.
    pub fn genus_two() -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        let v = b.add_vertex();
        let [a, bb, c, d] = [0; 4].map(|_| b.add_edge(v, v));
        b.add_uniform_face(vec![a, bb, -a, -bb, c, d, -c, -d], right());
        b.split_face(1, 0, 3, |x| (x / 2, x / 2));
        b.split_face(2, 0, 3, |x| (x / 2, x / 2));
        b
    }

    /// The standard library of at least fifty complexes.
    pub fn standard() -> Vec<(String, ComplexBuilder)> {
        let mut out = Vec::new();
        for m in 1..=4 {
            for n in 1..=4 {
                out.push((format!("torus-{m}x{n}"), torus(m, n)));
                out.push((format!("disk-{m}x{n}"), disk(m, n)));
            }
        }
        for m in 1..=4 {
            for n in 1..=3 {
                out.push((format!("annulus-{m}x{n}"), annulus(m, n)));
            }
        }
        for p in 1..=8 {
            out.push((format!("polygon-{p}"), polygon(p)));
        }
        out.push(("cube".to_string(), cube_surface()));
        out.push(("genus-two".to_string(), genus_two()));
        out
    }
}

/// Random subdivisions of the standard library with random angles.
pub mod random {
    use super::*;
    use rand::Rng;

    fn angle<R: Rng>(rng: &mut R) -> Rational {
        Rational::new(rng.gen_range(-12..=24), rng.gen_range(1..=12))
    }

    pub fn random_complex<R: Rng>(rng: &mut R, steps: usize) -> ComplexBuilder {
        let lib = library::standard();
        let mut b = lib[rng.gen_range(0..lib.len())].1.clone();
        for f in &mut b.spec.faces {
            for a in &mut f.angles {
                *a = angle(rng);
            }
        }
        for _ in 0..steps {
            if rng.gen_bool(0.5) && !b.spec.edges.is_empty() {
                let e = b.spec.edges[rng.gen_range(0..b.spec.edges.len())].id;
                b.split_edge(e, || angle(rng));
            } else {
                let candidates: Vec<(u64, usize)> =
                    b.spec.faces.iter().filter(|f| f.boundary.len() >= 2).map(|f| (f.id, f.boundary.len())).collect();
                if candidates.is_empty() {
                    continue;
                }
                let (f, p) = candidates[rng.gen_range(0..candidates.len())];
                let i = rng.gen_range(0..p - 1);
                let j = rng.gen_range(i + 1..p);
                let mut cut = |x: Rational| {
                    let part = angle(rng);
                    (part, x - part)
                };
                b.split_face(f, i, j, &mut cut);
            }
        }
        b
    }
}

//! Lower bounds for stable commutator length from proper colorings and
//! triangle-freeness of the defining graph, with self-contained certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, ColoringMode, DefiningGraph, EXACT_VERTEX_CAP};
use crate::rational::{serde_ratio, Rational};
use crate::word::{Raag, Word};

/// How the reported bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `1/(6k)` from a proper `k`-coloring.
    Thm1,
    /// `1/20` for a triangle-free graph.
    Thm2,
    /// The larger of both, when both apply.
    BestOfBoth,
    /// No power of `g` lies in the commutator subgroup.
    Infinite,
    /// `g` is trivial.
    Zero,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Thm1 => "thm1",
            Route::Thm2 => "thm2",
            Route::BestOfBoth => "best_of_both",
            Route::Infinite => "infinite",
            Route::Zero => "zero",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub name: String,
    #[serde(with = "serde_ratio")]
    pub value: Rational,
}

mod serde_opt_ratio {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => serde_ratio::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| crate::rational::parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    /// Defining graph in its text form.
    pub graph: String,
    pub element: String,
    pub finite: bool,
    /// `None` exactly when the route is `infinite`.
    #[serde(with = "serde_opt_ratio")]
    pub bound: Option<Rational>,
    pub route: Route,
    /// The route attaining `bound` (`thm1` on ties).
    pub decisive: Option<Route>,
    pub coloring: Option<Coloring>,
    #[serde(with = "serde_opt_ratio")]
    pub coloring_bound: Option<Rational>,
    pub chromatic_exact: bool,
    pub triangle_free_witness: bool,
    #[serde(with = "serde_opt_ratio")]
    pub triangle_free_bound: Option<Rational>,
    pub references: Vec<Reference>,
}

/// The triangle-free constant.
pub fn triangle_free_constant() -> Rational {
    Rational::new(1, 20)
}

/// `1/(6k)`.
pub fn coloring_constant(k: usize) -> Rational {
    Rational::new(1, 6 * k as i64)
}

/// Known constants, for display next to certificates.
pub fn reference_bounds() -> Vec<Reference> {
    [
        ("culler_free", 1, 6),
        ("duncan_howie_free", 1, 2),
        ("heuer_raag", 1, 2),
        ("fft_raag", 1, 24),
        ("commutator_exact_free", 1, 2),
    ]
    .into_iter()
    .map(|(name, p, q)| Reference { name: name.to_string(), value: Rational::new(p, q) })
    .collect()
}

pub fn reference_bound(name: &str) -> Option<Rational> {
    reference_bounds().into_iter().find(|r| r.name == name).map(|r| r.value)
}

/// Some nonzero power of `g` is a product of commutators iff its exponent
/// vector vanishes.
pub fn is_scl_finite(raag: &Raag, g: &Word) -> bool {
    raag.exponent_vector(&raag.reduce(g)).is_zero()
}

pub fn scl_lower_bound(raag: &Raag, g: &Word, mode: ColoringMode) -> Result<BoundCertificate> {
    scl_lower_bound_with_cap(raag, g, mode, EXACT_VERTEX_CAP)
}

pub fn scl_lower_bound_with_cap(raag: &Raag, g: &Word, mode: ColoringMode, exact_cap: usize) -> Result<BoundCertificate> {
    raag.check_word(g)?;
    let graph = raag.graph();
    let mut cert = BoundCertificate {
        graph: graph.to_text(),
        element: raag.format_word(g),
        finite: true,
        bound: Some(Rational::from_integer(0)),
        route: Route::Zero,
        decisive: None,
        coloring: None,
        coloring_bound: None,
        chromatic_exact: false,
        triangle_free_witness: false,
        triangle_free_bound: None,
        references: reference_bounds(),
    };
    if raag.reduce(g).is_empty() {
        return Ok(cert);
    }
    if !is_scl_finite(raag, g) {
        cert.finite = false;
        cert.bound = None;
        cert.route = Route::Infinite;
        return Ok(cert);
    }
    let chromatic = graph.chromatic_number_with_cap(mode, exact_cap)?;
    let thm1 = coloring_constant(chromatic.num_colors);
    cert.coloring = Some(chromatic.coloring);
    cert.coloring_bound = Some(thm1);
    cert.chromatic_exact = chromatic.exact;
    if graph.is_triangle_free() {
        let thm2 = triangle_free_constant();
        cert.triangle_free_witness = true;
        cert.triangle_free_bound = Some(thm2);
        cert.route = Route::BestOfBoth;
        cert.bound = Some(thm1.max(thm2));
        cert.decisive = Some(if thm1 >= thm2 { Route::Thm1 } else { Route::Thm2 });
    } else {
        cert.route = Route::Thm1;
        cert.bound = Some(thm1);
        cert.decisive = Some(Route::Thm1);
    }
    Ok(cert)
}

/// Re-derives every claim of a certificate from its own fields.
pub fn verify_certificate(cert: &BoundCertificate) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidCertificate(m.to_string()));
    let graph = DefiningGraph::parse(&cert.graph)?;
    let raag = Raag::new(graph.clone());
    let g = raag.parse_word(&cert.element)?;
    let trivial = raag.reduce(&g).is_empty();
    let finite = raag.exponent_vector(&raag.reduce(&g)).is_zero();
    if cert.finite != finite {
        return bad("finiteness flag disagrees with the exponent vector");
    }
    match cert.route {
        Route::Zero => {
            if !trivial || cert.bound != Some(Rational::from_integer(0)) {
                return bad("route zero requires a trivial element and bound 0");
            }
            return Ok(());
        }
        Route::Infinite => {
            if finite || cert.bound.is_some() {
                return bad("route infinite requires a nonzero exponent vector and no bound");
            }
            return Ok(());
        }
        _ if trivial => return bad("nontrivial route for a trivial element"),
        _ if !finite => return bad("finite route for an element of infinite scl"),
        _ => {}
    }
    let thm1 = match (&cert.coloring, cert.route) {
        (Some(c), _) => {
            if c.num_colors == 0 || !c.is_proper(&graph) {
                return bad("coloring is not proper");
            }
            let value = coloring_constant(c.num_colors);
            if cert.coloring_bound != Some(value) {
                return bad("coloring bound is not 1/(6k)");
            }
            Some(value)
        }
        (None, Route::Thm1 | Route::BestOfBoth) => return bad("route needs a coloring"),
        (None, _) => None,
    };
    let thm2 = if cert.triangle_free_witness {
        if let Some((a, b, c)) = graph.find_triangle() {
            let names = [graph.name(a), graph.name(b), graph.name(c)];
            return bad(&format!("graph has triangle {names:?}"));
        }
        if cert.triangle_free_bound != Some(triangle_free_constant()) {
            return bad("triangle-free bound is not 1/20");
        }
        Some(triangle_free_constant())
    } else {
        None
    };
    let expected = match cert.route {
        Route::Thm1 => thm1,
        Route::Thm2 => thm2,
        Route::BestOfBoth => match (thm1, thm2) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => return bad("best-of-both needs both routes"),
        },
        Route::Zero | Route::Infinite => unreachable!(),
    };
    if expected.is_none() || cert.bound != expected {
        return bad("bound does not match its route");
    }
    let decisive = match cert.decisive {
        Some(Route::Thm1) => thm1,
        Some(Route::Thm2) => thm2,
        _ => return bad("decisive route must be thm1 or thm2"),
    };
    if decisive != expected {
        return bad("decisive route does not attain the bound");
    }
    Ok(())
}

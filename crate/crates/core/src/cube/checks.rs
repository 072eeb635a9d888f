//! Randomized searches for configurations forbidden by the special-action
//! axioms and by the midpoint property of longest chains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{HalfSpace, UniversalCover, Vertex};
use crate::error::Result;
use crate::word::{Letter, Word};

/// Cap on the longest chains enumerated per nested pair.
const CHAIN_ENUMERATION_CAP: usize = 256;

/// One forbidden configuration, rendered for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub halfspaces: Vec<String>,
    pub element: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub s1_checked: usize,
    pub s2_checked: usize,
    pub s3_checked: usize,
    pub s4_checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub intervals: usize,
    pub nested_pairs: usize,
    pub chains: usize,
    pub midpoint_pairs: usize,
    pub crossing_midpoints: usize,
    pub violations: Vec<Violation>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl UniversalCover {
    /// Reduced form of a uniformly random word of length `len`.
    pub(crate) fn random_word<R: Rng>(&self, rng: &mut R, len: usize) -> Word {
        let rank = self.raag().rank();
        let letters = (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))).collect();
        self.raag().normal_form(&Word::from_letters(letters))
    }

    /// A random element of length at most `radius`.
    pub(crate) fn random_element<R: Rng>(&self, rng: &mut R, radius: usize) -> Word {
        let len = rng.gen_range(0..=radius);
        self.random_word(rng, len)
    }

    fn random_halfspace<R: Rng>(&self, rng: &mut R, radius: usize) -> HalfSpace {
        let x = self.vertex(&self.random_element(rng, radius));
        let rank = self.raag().rank();
        self.halfspace_of_edge(&x, Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)))
    }

    /// A tightly-nested pair `H ⊃ K` read off a geodesic path of two
    /// non-commuting edges.
    fn random_tight_pair<R: Rng>(&self, rng: &mut R, radius: usize) -> Option<(HalfSpace, HalfSpace)> {
        let raag = self.raag();
        let rank = raag.rank();
        let x = self.random_element(rng, radius);
        let l1 = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        let l2 = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if l2 == l1.inverse() || raag.commute(l1, l2) {
            return None;
        }
        let x = self.vertex(&x);
        let y = self.translate(&x, &Word::from_letters(vec![l1]));
        Some((self.halfspace_of_edge(&x, l1), self.halfspace_of_edge(&y, l2)))
    }

    fn violation(&self, check: &str, hs: &[&HalfSpace], f: &Word) -> Violation {
        Violation {
            check: check.to_string(),
            halfspaces: hs.iter().map(|h| h.render(self.raag())).collect(),
            element: self.raag().format_word(f),
        }
    }

    /// Samples half-spaces and tightly-nested pairs with defining edges near
    /// the ball of the given radius, and elements `f` with `|f| ≤ radius`,
    /// and records every occurrence of
    /// `f(H̄) = H`, `H ⋔ fH`, `H` tightly nested with `f(H̄)`, or `H ⋔ fK`.
    pub fn check_special_axioms(&self, samples: usize, radius: usize, seed: u64) -> Result<AxiomReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = AxiomReport { samples, ..Default::default() };
        for _ in 0..samples {
            let h = self.random_halfspace(&mut rng, radius);
            let f = self.random_element(&mut rng, radius);

            let f_hbar = self.act(&f, &h.complement());
            report.s1_checked += 1;
            if f_hbar == h {
                report.violations.push(self.violation("s1", &[&h], &f));
            }

            let fh = self.act(&f, &h);
            report.s2_checked += 1;
            if !fh.same_hyperplane(&h) && self.edge_hull(&[&h, &fh])?.crosses(&h, &fh)? {
                report.violations.push(self.violation("s2", &[&h, &fh], &f));
            }

            report.s3_checked += 1;
            if !f_hbar.same_hyperplane(&h) && self.edge_hull(&[&h, &f_hbar])?.tightly_nested(&h, &f_hbar)? {
                report.violations.push(self.violation("s3", &[&h, &f_hbar], &f));
            }

            if let Some((p, q)) = self.random_tight_pair(&mut rng, radius) {
                let fq = self.act(&f, &q);
                report.s4_checked += 1;
                if !fq.same_hyperplane(&p) && self.edge_hull(&[&p, &fq])?.crosses(&p, &fq)? {
                    report.violations.push(self.violation("s4", &[&p, &q], &f));
                }
            }
        }
        Ok(report)
    }

    /// Samples intervals `[x, y]` with `|x|, |y| ≤ radius`; for every nested
    /// pair in each, enumerates all longest chains and checks that any two
    /// midpoints coincide or cross.
    pub fn check_max_chains(&self, samples: usize, radius: usize, seed: u64) -> Result<ChainReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = ChainReport::default();
        for _ in 0..samples {
            let x = self.vertex(&self.random_element(&mut rng, radius));
            let y = self.vertex(&self.random_element(&mut rng, radius));
            report.intervals += 1;
            self.check_max_chains_in(&x, &y, &mut report)?;
        }
        Ok(report)
    }

    pub(crate) fn check_max_chains_in(&self, x: &Vertex, y: &Vertex, report: &mut ChainReport) -> Result<()> {
        let ctx = self.interval_context(x, y)?;
        for (h, k) in ctx.nested_pairs() {
            report.nested_pairs += 1;
            let chains = ctx.longest_chains(&h, &k, CHAIN_ENUMERATION_CAP)?;
            report.chains += chains.len();
            if chains[0].length() == 0 {
                continue;
            }
            let mids: Vec<&HalfSpace> = chains.iter().map(|c| c.midpoint()).collect::<Result<_>>()?;
            for (i, m1) in mids.iter().enumerate() {
                for m2 in &mids[i + 1..] {
                    report.midpoint_pairs += 1;
                    if m1 == m2 {
                        continue;
                    }
                    if ctx.crosses(m1, m2)? {
                        report.crossing_midpoints += 1;
                    } else {
                        report.violations.push(self.violation("max-chains", &[&h, &k, m1, m2], &Word::identity()));
                    }
                }
            }
        }
        Ok(())
    }
}

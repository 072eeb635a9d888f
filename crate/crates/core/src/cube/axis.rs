//! The identity axis `n ↦ g^n` of a cyclically reduced element and the
//! attracting half-spaces `A_g^+` along it.

use super::{HalfSpace, UniversalCover, Vertex};
use crate::error::{Error, Result};
use crate::word::Word;

impl UniversalCover {
    fn check_axis_word(&self, g: &Word) -> Result<()> {
        self.raag().check_word(g)?;
        if g.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !self.raag().is_cyclically_reduced(g).unwrap_or(false) {
            return Err(Error::NotCyclicallyReduced);
        }
        Ok(())
    }

    /// Search radius for `in_a_g_plus`.
    ///
    /// If `H ∈ [g^n, g^(n+1)]`, the separating half-spaces `g^j H_0` for the
    /// axis edge `H_0` dual to `H` force `|base(H)| ≥ (|n| - 1)|g|`, so
    /// `|base| + |g| + 1` bounds `|n|` with room to spare.
    pub fn a_g_plus_window(&self, g: &Word, h: &HalfSpace) -> usize {
        h.base().len() + g.len() + 1
    }

    /// Whether `H ∈ A_g^+`, i.e. `H ∈ [g^n, g^(n+1)]` for some `n`.
    pub fn in_a_g_plus(&self, g: &Word, h: &HalfSpace) -> Result<bool> {
        let n = self.a_g_plus_window(g, h);
        self.in_a_g_plus_window(g, h, n)
    }

    /// `in_a_g_plus` restricted to `|n| ≤ window`.
    ///
    /// The axis is a geodesic, so membership of `g^n` in `H` changes at most
    /// once along it; checking the two ends of the window suffices.
    pub fn in_a_g_plus_window(&self, g: &Word, h: &HalfSpace, window: usize) -> Result<bool> {
        self.check_axis_word(g)?;
        let back = self.vertex(&self.raag().power_signed(g, -(window as i64)));
        let front = self.vertex(&self.raag().power_signed(g, window as i64 + 1));
        Ok(!self.member(&back, h) && self.member(&front, h))
    }

    /// The vertex at signed distance `t` from the identity along the axis:
    /// `g^q · g[..r]` for `t = q|g| + r`, `0 ≤ r < |g|`.
    pub fn axis_vertex(&self, g: &Word, t: i64) -> Result<Vertex> {
        self.check_axis_word(g)?;
        let len = g.len() as i64;
        let q = t.div_euclid(len);
        let r = t.rem_euclid(len) as usize;
        let prefix = Word::from_letters(g.letters()[..r].to_vec());
        Ok(self.vertex(&self.raag().power_signed(g, q).then(&prefix)))
    }

    /// `[g^n, g^(n+1)]`.
    pub fn axis_interval(&self, g: &Word, n: i64) -> Result<super::Interval> {
        let x = self.axis_vertex(g, n * g.len() as i64)?;
        let y = self.axis_vertex(g, (n + 1) * g.len() as i64)?;
        Ok(self.interval(&x, &y))
    }
}

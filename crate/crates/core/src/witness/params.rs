use crate::combinatorics::{DegreeBound, DyckPath, PlaneTree};
use crate::error::{invalid, Result};

/// Half multiplicity of every core edge inside the X'-part.
pub const CORE_HALF_MULTIPLICITY: usize = 5;

/// Size parameters of one witness family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessParams {
    /// Edges of the skeleton tree.
    pub s_pp: usize,
    pub d0: DegreeBound,
    /// Number of core edges.
    pub big_d: usize,
    pub nu2: usize,
    /// Number of Y-part trips.
    pub l: usize,
    /// Semilength of the completion appended after the inserted skeleton,
    /// so that `s' = 5 s'' + extra` with `extra < 5`.
    pub extra: usize,
    /// Convention for the separation of selected edges.
    pub distance: EdgeDistance,
}

impl WitnessParams {
    pub fn new(s_pp: usize, d0: usize, big_d: usize, nu2: usize, l: usize) -> Result<Self> {
        Self::with_extra(s_pp, d0, big_d, nu2, l, 0)
    }

    pub fn with_extra(
        s_pp: usize,
        d0: usize,
        big_d: usize,
        nu2: usize,
        l: usize,
        extra: usize,
    ) -> Result<Self> {
        let p = WitnessParams {
            s_pp,
            d0: DegreeBound::new(d0)?,
            big_d,
            nu2,
            l,
            extra,
            distance: EdgeDistance::default(),
        };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if self.s_pp == 0 {
            return Err(invalid("the skeleton needs at least one edge"));
        }
        if self.big_d == 0 {
            return Err(invalid("D must be at least 1"));
        }
        if self.l < self.big_d {
            return Err(invalid(format!(
                "L = {} is below D = {}",
                self.l, self.big_d
            )));
        }
        if self.extra >= CORE_HALF_MULTIPLICITY {
            return Err(invalid(format!(
                "completion semilength {} must be below 5",
                self.extra
            )));
        }
        if CORE_HALF_MULTIPLICITY * self.big_d + 2 * self.nu2 > self.s_prime() {
            return Err(invalid(format!(
                "5D + 2 nu2 = {} exceeds s' = {}",
                CORE_HALF_MULTIPLICITY * self.big_d + 2 * self.nu2,
                self.s_prime()
            )));
        }
        Ok(())
    }

    pub fn with_distance(mut self, distance: EdgeDistance) -> Self {
        self.distance = distance;
        self
    }

    /// Half-length of the X'-part.
    pub fn s_prime(&self) -> usize {
        CORE_HALF_MULTIPLICITY * self.s_pp + self.extra
    }

    /// Total half-length of the walk.
    pub fn s(&self) -> usize {
        self.s_prime() + 1 + self.l
    }

    /// Vertex count every member of the family must have.
    pub fn expected_vertices(&self) -> usize {
        self.s() + 1 - CORE_HALF_MULTIPLICITY * self.big_d - self.nu2 - self.l
    }
}

/// How the distance between two skeleton edges is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeDistance {
    /// Smallest tree distance over the four endpoint pairs.
    #[default]
    MinEndpoint,
    /// Largest tree distance over the four endpoint pairs.
    FarEndpoint,
}

impl EdgeDistance {
    pub fn between(self, t: &PlaneTree, e: usize, f: usize) -> usize {
        let (a, b) = t.edge(e);
        let (c, d) = t.edge(f);
        let ds = [
            t.distance(a, c),
            t.distance(a, d),
            t.distance(b, c),
            t.distance(b, d),
        ];
        match self {
            EdgeDistance::MinEndpoint => *ds.iter().min().expect("four distances"),
            EdgeDistance::FarEndpoint => *ds.iter().max().expect("four distances"),
        }
    }
}

/// One member of the family, before the walk is built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessChoice {
    pub skeleton: PlaneTree,
    /// Selected skeleton edges, named by their child vertex, in ascent order.
    pub principal_edges: Vec<usize>,
    pub completion: DyckPath,
    /// Simple self-intersections as `(earlier, later)` vertices of the
    /// inserted tree; the later vertex is glued onto the earlier one.
    pub si_pairs: Vec<(usize, usize)>,
    /// Destinations of the trips after the first `D`, as indices into the
    /// selected edges.
    pub trip_schedule: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_sizes() {
        let p = WitnessParams::new(1, 3, 1, 0, 1).unwrap();
        assert_eq!((p.s_prime(), p.s(), p.expected_vertices()), (5, 7, 2));
        let p = WitnessParams::with_extra(4, 3, 2, 1, 5, 3).unwrap();
        assert_eq!(p.s_prime(), 23);
        assert_eq!(2 * p.s_prime() + 2 + 2 * p.l, 2 * p.s());
    }

    #[test]
    fn rejects_inconsistent_sizes() {
        assert!(WitnessParams::new(1, 3, 0, 0, 1).is_err());
        assert!(WitnessParams::new(1, 3, 2, 0, 2).is_err());
        assert!(WitnessParams::new(2, 3, 2, 0, 1).is_err());
        assert!(WitnessParams::new(1, 3, 1, 1, 1).is_err());
        assert!(WitnessParams::new(1, 0, 1, 0, 1).is_err());
        assert!(WitnessParams::with_extra(1, 3, 1, 0, 1, 5).is_err());
    }
}

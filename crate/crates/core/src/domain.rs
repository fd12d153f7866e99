//! Rectangular parameter domains and the uniform grids laid over them.

use serde::Serialize;

/// What an interval endpoint of the parameter domain maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FaceKind {
    /// Mapped into the boundary sphere `∂B`: part of `∂Σ`.
    Marked,
    /// Chart degeneracy (polar axis); not part of `∂Σ`.
    Pole,
    /// A genuine boundary edge of `Σ` that is not required to lie in `∂B`.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Axis {
    Interval {
        lo: f64,
        hi: f64,
        lo_face: FaceKind,
        hi_face: FaceKind,
    },
    Periodic {
        lo: f64,
        hi: f64,
    },
}

impl Axis {
    pub fn interval(lo: f64, hi: f64, lo_face: FaceKind, hi_face: FaceKind) -> Self {
        Axis::Interval {
            lo,
            hi,
            lo_face,
            hi_face,
        }
    }

    pub fn periodic(lo: f64, hi: f64) -> Self {
        Axis::Periodic { lo, hi }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Axis::Interval { lo, hi, .. } | Axis::Periodic { lo, hi } => (lo, hi),
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Axis::Periodic { .. })
    }

    pub fn length(&self) -> f64 {
        let (lo, hi) = self.bounds();
        hi - lo
    }
}

/// Which end of an interval axis a face sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Lo,
    Hi,
}

impl Side {
    /// Sign of the outward direction along the axis.
    pub fn outward_sign(self) -> f64 {
        match self {
            Side::Lo => -1.0,
            Side::Hi => 1.0,
        }
    }
}

/// A boundary face `u_axis = lo` or `u_axis = hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub axis: usize,
    pub side: Side,
    pub kind: FaceKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamDomain {
    axes: Vec<Axis>,
}

impl ParamDomain {
    pub fn new(axes: Vec<Axis>) -> Self {
        assert!(axes.len() >= 2, "hypersurface parameter domains have n >= 2");
        ParamDomain { axes }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &Axis {
        &self.axes[i]
    }

    /// All interval faces, in axis order.
    pub fn faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (axis, a) in self.axes.iter().enumerate() {
            if let Axis::Interval {
                lo_face, hi_face, ..
            } = *a
            {
                out.push(Face {
                    axis,
                    side: Side::Lo,
                    kind: lo_face,
                });
                out.push(Face {
                    axis,
                    side: Side::Hi,
                    kind: hi_face,
                });
            }
        }
        out
    }

    /// Faces that make up `∂Σ` (marked or open).
    pub fn boundary_faces(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .filter(|f| f.kind != FaceKind::Pole)
            .collect()
    }

    pub fn marked_faces(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .filter(|f| f.kind == FaceKind::Marked)
            .collect()
    }

    pub fn face_coordinate(&self, face: Face) -> f64 {
        let (lo, hi) = self.axes[face.axis].bounds();
        match face.side {
            Side::Lo => lo,
            Side::Hi => hi,
        }
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        self.axes.iter().zip(u).all(|(a, &x)| match *a {
            Axis::Interval { lo, hi, .. } => x >= lo && x <= hi,
            Axis::Periodic { .. } => true,
        })
    }

    /// Wrap periodic coordinates into their fundamental interval.
    pub fn wrap(&self, u: &mut [f64]) {
        for (a, x) in self.axes.iter().zip(u.iter_mut()) {
            if let Axis::Periodic { lo, hi } = *a {
                let p = hi - lo;
                *x = lo + (*x - lo).rem_euclid(p);
            }
        }
    }

    pub fn grid(&self, resolution: usize) -> Grid {
        Grid::new(self.clone(), vec![resolution; self.dim()])
    }

    /// A point well inside the domain (midpoint of every axis).
    pub fn center(&self) -> Vec<f64> {
        self.axes
            .iter()
            .map(|a| {
                let (lo, hi) = a.bounds();
                0.5 * (lo + hi)
            })
            .collect()
    }
}

/// Uniform grid over a [`ParamDomain`]. Interval axes with `N` cells carry
/// `N + 1` nodes; periodic axes carry `N` nodes (the endpoint is identified).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    domain: ParamDomain,
    cells: Vec<usize>,
    counts: Vec<usize>,
    strides: Vec<usize>,
    spacing: Vec<f64>,
}

impl Grid {
    pub fn new(domain: ParamDomain, cells: Vec<usize>) -> Self {
        assert_eq!(cells.len(), domain.dim());
        let counts: Vec<usize> = domain
            .axes()
            .iter()
            .zip(&cells)
            .map(|(a, &c)| if a.is_periodic() { c } else { c + 1 })
            .collect();
        let spacing = domain
            .axes()
            .iter()
            .zip(&cells)
            .map(|(a, &c)| a.length() / c as f64)
            .collect();
        let mut strides = vec![1; counts.len()];
        for i in (0..counts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * counts[i + 1];
        }
        Grid {
            domain,
            cells,
            counts,
            strides,
            spacing,
        }
    }

    pub fn domain(&self) -> &ParamDomain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    /// Largest grid spacing.
    pub fn h(&self) -> f64 {
        self.spacing.iter().cloned().fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn multi(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for (i, s) in self.strides.iter().enumerate() {
            out[i] = flat / s;
            flat %= s;
        }
        out
    }

    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        let (lo, _) = self.domain.axis(axis).bounds();
        lo + i as f64 * self.spacing[axis]
    }

    pub fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(a, &i)| self.coord(a, i))
            .collect()
    }

    pub fn point_flat(&self, flat: usize) -> Vec<f64> {
        self.point(&self.multi(flat))
    }

    /// Index shifted by `offset` along `axis`, wrapping periodic axes;
    /// `None` when it leaves an interval axis.
    pub fn shifted(&self, flat: usize, axis: usize, offset: isize) -> Option<usize> {
        let i = (flat / self.strides[axis]) % self.counts[axis];
        let n = self.counts[axis] as isize;
        let j = i as isize + offset;
        let j = if self.domain.axis(axis).is_periodic() {
            j.rem_euclid(n)
        } else if j < 0 || j >= n {
            return None;
        } else {
            j
        };
        Some((flat as isize + (j - i as isize) * self.strides[axis] as isize) as usize)
    }

    /// Position of a node along `axis`.
    pub fn axis_index(&self, flat: usize, axis: usize) -> usize {
        (flat / self.strides[axis]) % self.counts[axis]
    }

    /// Distance in cells to the nearest interval endpoint along `axis`
    /// (`usize::MAX` on periodic axes).
    pub fn cells_to_edge(&self, flat: usize, axis: usize) -> usize {
        if self.domain.axis(axis).is_periodic() {
            return usize::MAX;
        }
        let i = self.axis_index(flat, axis);
        i.min(self.counts[axis] - 1 - i)
    }

    /// Whether every interval axis is at least `margin` cells from its ends.
    pub fn is_interior(&self, flat: usize, margin: usize) -> bool {
        (0..self.dim()).all(|a| self.cells_to_edge(flat, a) >= margin)
    }

    pub fn on_face(&self, flat: usize, face: Face) -> bool {
        let i = self.axis_index(flat, face.axis);
        match face.side {
            Side::Lo => i == 0,
            Side::Hi => i == self.counts[face.axis] - 1,
        }
    }

    /// Flat indices of all nodes on a face, in grid order.
    pub fn face_nodes(&self, face: Face) -> Vec<usize> {
        (0..self.len()).filter(|&f| self.on_face(f, face)).collect()
    }

    /// Whether the node lies on any pole face.
    pub fn on_pole(&self, flat: usize) -> bool {
        self.domain
            .faces()
            .into_iter()
            .any(|f| f.kind == FaceKind::Pole && self.on_face(flat, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annulus() -> ParamDomain {
        ParamDomain::new(vec![
            Axis::interval(-1.0, 1.0, FaceKind::Marked, FaceKind::Marked),
            Axis::periodic(0.0, std::f64::consts::TAU),
        ])
    }

    #[test]
    fn grid_shape_and_indexing() {
        let g = annulus().grid(8);
        assert_eq!(g.counts(), &[9, 8]);
        assert_eq!(g.len(), 72);
        for f in 0..g.len() {
            assert_eq!(g.flat(&g.multi(f)), f);
        }
        assert!((g.spacing()[1] - std::f64::consts::TAU / 8.0).abs() < 1e-15);
    }

    #[test]
    fn periodic_shift_wraps_interval_shift_stops() {
        let g = annulus().grid(8);
        let f = g.flat(&[0, 7]);
        assert_eq!(g.shifted(f, 1, 1), Some(g.flat(&[0, 0])));
        assert_eq!(g.shifted(f, 0, -1), None);
        assert_eq!(g.shifted(f, 0, 2), Some(g.flat(&[2, 7])));
        assert_eq!(g.cells_to_edge(f, 1), usize::MAX);
    }

    #[test]
    fn faces_are_enumerated() {
        let d = annulus();
        assert_eq!(d.marked_faces().len(), 2);
        let g = d.grid(4);
        assert_eq!(g.face_nodes(d.marked_faces()[1]).len(), 4);
    }
}

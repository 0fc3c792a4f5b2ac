//! Grid classification of starting points.
//!
//! Cells whose escape-side distance estimate to the Julia set is below a
//! fraction of the cell size are reported UNDECIDED: at that resolution the
//! cell straddles the boundary and no single class is honest.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{exact_orbit, float_orbit_detail, to_complex_coeffs, FloatParams, OrbitReport};
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Poly, RatFun};

pub const MAX_RESOLUTION: usize = 8192;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CellClass {
    Finite,
    Undecided,
    Attracted,
    Escape,
}

impl CellClass {
    /// Grey level in PGM output.
    pub fn code(self) -> u8 {
        match self {
            CellClass::Finite => 0,
            CellClass::Undecided => 85,
            CellClass::Attracted => 170,
            CellClass::Escape => 255,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CellClass::Finite => "FINITE",
            CellClass::Undecided => "UNDECIDED",
            CellClass::Attracted => "ATTRACTED",
            CellClass::Escape => "ESCAPE",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cell {
    pub class: CellClass,
    pub period: Option<usize>,
    pub preperiod: Option<usize>,
}

impl Cell {
    fn from_report(r: &OrbitReport) -> Self {
        let (class, period, preperiod) = match *r {
            OrbitReport::FiniteExact { preperiod, period } | OrbitReport::FiniteNumeric { preperiod, period } => {
                (CellClass::Finite, Some(period), Some(preperiod))
            }
            OrbitReport::InfiniteCertified { .. } | OrbitReport::EscapedNumeric { .. } => (CellClass::Escape, None, None),
            OrbitReport::AttractedNumeric { period, .. } => (CellClass::Attracted, Some(period), None),
            OrbitReport::Undecided { .. } => (CellClass::Undecided, None, None),
        };
        Cell { class, period, preperiod }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Region {
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
}

impl Region {
    pub fn square(center: Complex64, width: f64) -> Self {
        Region { center, width, height: width }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RenderBudgets {
    pub max_iter: usize,
    pub eps: f64,
    /// Defaults to the escape radius of the map.
    pub escape_radius: Option<f64>,
    /// Distance-estimate threshold in cell sizes; 0 disables the guard.
    pub boundary_guard: f64,
    /// Try exact iteration first at cell centers of small height.
    pub exact: bool,
    pub exact_max_iter: usize,
    pub height_bound: u64,
}

impl Default for RenderBudgets {
    fn default() -> Self {
        RenderBudgets {
            max_iter: super::DEFAULT_MAX_ITER,
            eps: super::DEFAULT_EPS,
            escape_radius: None,
            boundary_guard: 0.5,
            exact: false,
            exact_max_iter: 64,
            height_bound: super::DEFAULT_HEIGHT_BITS,
        }
    }
}

/// Cell classes in row-major order, top row first.
#[derive(Clone, PartialEq, Debug)]
pub struct GridClassification {
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    pub cells: Vec<Cell>,
}

impl GridClassification {
    /// Center of cell `(i, j)`; `j = 0` is the top row.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        cell_center(&self.region, self.nx, self.ny, i, j)
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[j * self.nx + i]
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells.iter().filter(|c| c.class == class).count()
    }

    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.nx, self.ny).into_bytes();
        out.extend(self.cells.iter().map(|c| c.class.code()));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,class,period,preperiod\n");
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (p, c) = (self.point(i, j), self.cell(i, j));
                let _ = writeln!(s, "{},{},{},{},{}", p.re, p.im, c.class.name(), opt(c.period), opt(c.preperiod));
            }
        }
        s
    }
}

fn cell_center(region: &Region, nx: usize, ny: usize, i: usize, j: usize) -> Complex64 {
    let dx = region.width / nx as f64;
    let dy = region.height / ny as f64;
    Complex64::new(
        region.center.re + (i as f64 + 0.5 - nx as f64 / 2.0) * dx,
        region.center.im - (j as f64 + 0.5 - ny as f64 / 2.0) * dy,
    )
}

/// Classifies every cell center. Cells are independent, so the output does
/// not depend on the thread schedule.
pub fn render(map: &Poly, region: &Region, nx: usize, ny: usize, budgets: &RenderBudgets) -> Result<GridClassification> {
    if nx == 0 || ny == 0 || nx > MAX_RESOLUTION || ny > MAX_RESOLUTION {
        return Err(Error::BudgetExceeded(format!("resolution {nx}×{ny} (limit {MAX_RESOLUTION}²)")));
    }
    if map.degree() < 1 {
        return Err(Error::DegreeTooSmall { degree: map.degree() });
    }
    let coeffs = to_complex_coeffs(map);
    let mut params = FloatParams::for_map(&coeffs);
    params.max_iter = budgets.max_iter;
    params.eps = budgets.eps;
    if let Some(r) = budgets.escape_radius {
        params.escape_radius = r;
    }
    let cell_size = (region.width / nx as f64).max(region.height / ny as f64);
    let rat = RatFun::from_poly(map.clone());

    let classify = |a: Complex64| -> Cell {
        if budgets.exact {
            if let Some(g) = GaussianRational::from_complex64(a).filter(|g| g.height_bits() <= 64) {
                let r = exact_orbit(&rat, &g, budgets.exact_max_iter, budgets.height_bound);
                if matches!(r, OrbitReport::FiniteExact { .. } | OrbitReport::InfiniteCertified { .. }) {
                    return Cell::from_report(&r);
                }
            }
        }
        let (report, de) = float_orbit_detail(&coeffs, a, &params);
        let mut cell = Cell::from_report(&report);
        if de.is_some_and(|d| d < budgets.boundary_guard * cell_size) {
            cell.class = CellClass::Undecided;
        }
        cell
    };

    let cells = (0..nx * ny)
        .into_par_iter()
        .map(|k| classify(cell_center(region, nx, ny, k % nx, k / nx)))
        .collect();
    Ok(GridClassification { region: *region, nx, ny, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::julia::float_orbit;

    fn z2() -> Poly {
        Poly::from_ints(&[0, 0, 1])
    }

    #[test]
    fn unit_grid_matches_float_orbit() {
        for (c, center) in [(&[0i64, 0, 1][..], 0.3), (&[-1, 0, 1], 0.0), (&[0, 0, 1], 3.0)] {
            let p = Poly::from_ints(c);
            let region = Region::square(Complex64::new(center, 0.0), 4.0);
            let budgets = RenderBudgets { boundary_guard: 0.0, ..Default::default() };
            let grid = render(&p, &region, 1, 1, &budgets).unwrap();
            let coeffs = to_complex_coeffs(&p);
            let direct = float_orbit(&coeffs, Complex64::new(center, 0.0), &FloatParams::for_map(&coeffs));
            assert_eq!(grid.cells, vec![Cell::from_report(&direct)]);
        }
    }

    #[test]
    fn square_map_dichotomy() {
        let region = Region::square(Complex64::new(0.0, 0.0), 4.0);
        let grid = render(&z2(), &region, 128, 128, &RenderBudgets::default()).unwrap();
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let r = grid.point(i, j).norm();
                let class = grid.cell(i, j).class;
                if r > 1.05 {
                    assert_eq!(class, CellClass::Escape, "|a| = {r}");
                } else if r < 0.95 {
                    assert_eq!(class, CellClass::Attracted, "|a| = {r}");
                }
            }
        }
        assert!(grid.count(CellClass::Undecided) > 0);
    }

    #[test]
    fn chebyshev_julia_set_is_the_segment() {
        let region = Region::square(Complex64::new(0.0, 0.0), 5.0);
        let grid = render(&Poly::from_ints(&[-2, 0, 1]), &region, 101, 101, &RenderBudgets::default()).unwrap();
        let cell = 5.0 / 101.0;
        let mut undecided = 0;
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                if grid.cell(i, j).class == CellClass::Undecided {
                    undecided += 1;
                    let a = grid.point(i, j);
                    let dist = (a.re.abs() - 2.0).max(0.0).hypot(a.im);
                    assert!(dist <= 2.0 * cell, "{a}");
                }
            }
        }
        assert!(undecided > 0);
    }

    #[test]
    fn exact_mode_finds_preperiodic_centers() {
        // With an odd grid the center cell is exactly 0, fixed by z².
        let region = Region::square(Complex64::new(0.0, 0.0), 4.0);
        let budgets = RenderBudgets { exact: true, ..Default::default() };
        let grid = render(&z2(), &region, 3, 3, &budgets).unwrap();
        assert_eq!(grid.cell(1, 1), Cell { class: CellClass::Finite, period: Some(1), preperiod: Some(0) });
    }

    #[test]
    fn deterministic_and_serializable() {
        let region = Region::square(Complex64::new(-0.5, 0.25), 3.0);
        let p = Poly::from_ints(&[-1, 0, 1]);
        let a = render(&p, &region, 64, 48, &RenderBudgets::default()).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| render(&p, &region, 64, 48, &RenderBudgets::default()).unwrap());
        assert_eq!(a.to_pgm(), b.to_pgm());
        assert_eq!(a.to_pgm().len(), "P5\n64 48\n255\n".len() + 64 * 48);
        assert_eq!(a.to_csv().lines().count(), 64 * 48 + 1);
    }

    #[test]
    fn budgets() {
        let region = Region::square(Complex64::new(0.0, 0.0), 4.0);
        assert!(matches!(render(&z2(), &region, 8193, 1, &RenderBudgets::default()), Err(Error::BudgetExceeded(_))));
        assert!(render(&z2(), &region, 0, 1, &RenderBudgets::default()).is_err());
    }
}

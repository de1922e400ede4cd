//! Rectangular power-landscape grids over two varying terms with the other
//! two fixed, with CSV and binary PPM output.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadruple::Quadruple;
use crate::solver::{find_p_fixed, InfiniteSide, Position, PowerResult, SearchConfig};

/// One grid axis: the varied position and its sampled range.
///
/// Cells are sampled at their centers, so the coordinate of cell `i` is
/// `min + (i + 0.5) * (max - min) / steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub position: Position,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisSpec {
    pub fn cell_center(&self, index: usize) -> f64 {
        self.min + (index as f64 + 0.5) * (self.max - self.min) / self.steps as f64
    }
}

/// Full grid description: two fixed positions with values, two axes, and
/// the symmetric display clamp for the rendered power.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub fixed: [(Position, f64); 2],
    pub x_axis: AxisSpec,
    pub y_axis: AxisSpec,
    pub clamp: f64,
    pub search: SearchConfig,
}

impl GridSpec {
    pub fn new(fixed: [(Position, f64); 2], x_axis: AxisSpec, y_axis: AxisSpec) -> Result<Self> {
        let spec = GridSpec { fixed, x_axis, y_axis, clamp: 100.0, search: SearchConfig::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = [false; 4];
        let mut mark = |p: Position| {
            let i = p as usize;
            let dup = seen[i];
            seen[i] = true;
            dup
        };
        for (pos, value) in self.fixed {
            if mark(pos) {
                return Err(Error::InvalidGridSpec("duplicate position".into()));
            }
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidGridSpec(format!("fixed value {value} must be positive")));
            }
        }
        for axis in [&self.x_axis, &self.y_axis] {
            if mark(axis.position) {
                return Err(Error::InvalidGridSpec("duplicate position".into()));
            }
            if axis.steps < 1 {
                return Err(Error::InvalidGridSpec("steps must be at least 1".into()));
            }
            if !(axis.min < axis.max) {
                return Err(Error::InvalidGridSpec("axis needs min < max".into()));
            }
        }
        if !(self.clamp > 0.0) {
            return Err(Error::InvalidGridSpec("clamp must be positive".into()));
        }
        Ok(())
    }

    /// Assembles the quadruple for a cell in the fixed arrangement.
    fn assemble(&self, x: f64, y: f64) -> Result<Quadruple> {
        let mut terms = [0.0f64; 4];
        for (pos, value) in self.fixed {
            terms[pos as usize] = value;
        }
        terms[self.x_axis.position as usize] = x;
        terms[self.y_axis.position as usize] = y;
        Quadruple::new(terms[0], terms[1], terms[2], terms[3])
    }
}

/// A computed landscape: row-major cells, row index along the y axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PGrid {
    pub spec: GridSpec,
    pub cells: Vec<PowerResult>,
}

impl PGrid {
    pub fn cell(&self, xi: usize, yi: usize) -> &PowerResult {
        &self.cells[yi * self.spec.x_axis.steps + xi]
    }
}

/// Computes every cell of the grid. The arrangement is never reordered:
/// the fixed arrangement is the experiment. Cells are independent and
/// evaluated in parallel; assembly is by index, so the partitioning does
/// not affect the result.
pub fn compute_grid(spec: &GridSpec) -> Result<PGrid> {
    spec.validate()?;
    let (nx, ny) = (spec.x_axis.steps, spec.y_axis.steps);
    let cells: Vec<PowerResult> = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let (xi, yi) = (idx % nx, idx / nx);
            let x = spec.x_axis.cell_center(xi);
            let y = spec.y_axis.cell_center(yi);
            let quad = spec.assemble(x, y)?;
            find_p_fixed(&quad, spec.search)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PGrid { spec: spec.clone(), cells })
}

fn status_and_p(cell: &PowerResult) -> (&'static str, Option<f64>) {
    match cell {
        PowerResult::Unique { p, .. } => ("unique", Some(p.as_f64())),
        PowerResult::AllPowers => ("allp", None),
        PowerResult::NoPower(_) => ("nop", None),
        PowerResult::DegenerateInfinite(InfiniteSide::NegInf) => ("inf-", None),
        PowerResult::DegenerateInfinite(InfiniteSide::PosInf) => ("inf+", None),
    }
}

/// Writes the grid as CSV: header `x,y,status,p`, one row per cell in
/// row-major order, numbers with nine fractional digits. Byte-deterministic
/// for a given grid.
pub fn write_csv<W: Write>(grid: &PGrid, sink: &mut W) -> Result<()> {
    let mut out = String::with_capacity(grid.cells.len() * 32 + 16);
    out.push_str("x,y,status,p\n");
    let nx = grid.spec.x_axis.steps;
    for (idx, cell) in grid.cells.iter().enumerate() {
        let (xi, yi) = (idx % nx, idx / nx);
        let x = grid.spec.x_axis.cell_center(xi);
        let y = grid.spec.y_axis.cell_center(yi);
        let (status, p) = status_and_p(cell);
        match p {
            Some(p) => out.push_str(&format!("{x:.9},{y:.9},{status},{p:.9}\n")),
            None => out.push_str(&format!("{x:.9},{y:.9},{status},\n")),
        }
    }
    sink.write_all(out.as_bytes()).map_err(|e| Error::Write(e.to_string()))
}

/// Palette: diverging blue (negative) through black (zero) to red
/// (positive) for unique powers; gray for no power, white for all powers,
/// saturated blue/red for numerically infinite powers.
fn cell_color(cell: &PowerResult, clamp: f64) -> [u8; 3] {
    match cell {
        PowerResult::AllPowers => [255, 255, 255],
        PowerResult::NoPower(_) => [128, 128, 128],
        PowerResult::DegenerateInfinite(InfiniteSide::NegInf) => [0, 0, 255],
        PowerResult::DegenerateInfinite(InfiniteSide::PosInf) => [255, 0, 0],
        PowerResult::Unique { p, .. } => {
            let v = p.as_f64().clamp(-clamp, clamp);
            let channel = ((v.abs() / clamp) * 255.0).round() as u8;
            if v < 0.0 {
                [0, 0, channel]
            } else {
                [channel, 0, 0]
            }
        }
    }
}

/// Renders the grid as a binary portable pixmap (P6, maxval 255), one
/// pixel per cell, top image row at the maximal y so the picture reads
/// like a plot. Byte-exact for a given grid and clamp.
pub fn render_ppm(grid: &PGrid) -> Vec<u8> {
    let (nx, ny) = (grid.spec.x_axis.steps, grid.spec.y_axis.steps);
    let mut bytes = Vec::with_capacity(32 + nx * ny * 3);
    bytes.extend_from_slice(format!("P6\n{nx} {ny}\n255\n").as_bytes());
    for yi in (0..ny).rev() {
        for xi in 0..nx {
            bytes.extend_from_slice(&cell_color(grid.cell(xi, yi), grid.spec.clamp));
        }
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::ExtendedPower;

    fn axis(position: Position, min: f64, max: f64, steps: usize) -> AxisSpec {
        AxisSpec { position, min, max, steps }
    }

    fn one_cell_spec(a: f64, d: f64) -> GridSpec {
        // 1x1 grid whose single cell center lands on (a, d), b=2 c=5 fixed
        GridSpec {
            fixed: [(Position::B, 2.0), (Position::C, 5.0)],
            x_axis: axis(Position::A, a - 0.5, a + 0.5, 1),
            y_axis: axis(Position::D, d - 0.5, d + 0.5, 1),
            clamp: 100.0,
            search: SearchConfig::default(),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(
            [(Position::B, 2.0), (Position::B, 5.0)],
            axis(Position::A, 0.0, 12.0, 10),
            axis(Position::D, 0.0, 12.0, 10),
        )
        .is_err());
        assert!(GridSpec::new(
            [(Position::B, 2.0), (Position::C, 5.0)],
            axis(Position::A, 12.0, 0.0, 10),
            axis(Position::D, 0.0, 12.0, 10),
        )
        .is_err());
        assert!(GridSpec::new(
            [(Position::B, -2.0), (Position::C, 5.0)],
            axis(Position::A, 0.0, 12.0, 10),
            axis(Position::D, 0.0, 12.0, 10),
        )
        .is_err());
    }

    #[test]
    fn hyperbola_cell_is_geometric() {
        // 1*10 = 2*5: the cell sits exactly on the zero-power hyperbola
        let grid = compute_grid(&one_cell_spec(1.0, 10.0)).unwrap();
        assert!(matches!(grid.cells[0], PowerResult::Unique { p: ExtendedPower::Zero, .. }));
    }

    #[test]
    fn framing_failure_cell() {
        // max(a, d) = 3 < 5: framing impossible in the fixed arrangement
        let grid = compute_grid(&one_cell_spec(1.0, 3.0)).unwrap();
        assert!(matches!(grid.cells[0], PowerResult::NoPower(_)));
    }

    #[test]
    fn interior_cell_is_unique() {
        let grid = compute_grid(&one_cell_spec(3.0, 4.0)).unwrap();
        assert!(matches!(grid.cells[0], PowerResult::Unique { .. }));
    }

    #[test]
    fn csv_shape_and_formatting() {
        let spec = GridSpec {
            fixed: [(Position::B, 2.0), (Position::C, 5.0)],
            x_axis: axis(Position::A, 0.0, 2.0, 2),
            y_axis: axis(Position::D, 0.0, 2.0, 2),
            clamp: 100.0,
            search: SearchConfig::default(),
        };
        let grid = compute_grid(&spec).unwrap();
        let mut buf = Vec::new();
        write_csv(&grid, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.trim_end().lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "x,y,status,p");

        let geo = compute_grid(&one_cell_spec(1.0, 10.0)).unwrap();
        let mut buf = Vec::new();
        write_csv(&geo, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("unique,0.000000000\n"));

        let nop = compute_grid(&one_cell_spec(1.0, 3.0)).unwrap();
        let mut buf = Vec::new();
        write_csv(&nop, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("nop,\n"));
    }

    #[test]
    fn ppm_palette_contract() {
        let geo = compute_grid(&one_cell_spec(1.0, 10.0)).unwrap();
        let ppm = render_ppm(&geo);
        assert!(ppm.starts_with(b"P6\n1 1\n255\n"));
        assert_eq!(&ppm[ppm.len() - 3..], &[0, 0, 0]);

        let nop = compute_grid(&one_cell_spec(1.0, 3.0)).unwrap();
        let ppm = render_ppm(&nop);
        assert_eq!(&ppm[ppm.len() - 3..], &[128, 128, 128]);

        let clamped = PGrid {
            spec: one_cell_spec(1.0, 10.0),
            cells: vec![PowerResult::Unique {
                p: ExtendedPower::finite(100.0).unwrap(),
                residual: 0.0,
            }],
        };
        let ppm = render_ppm(&clamped);
        assert_eq!(&ppm[ppm.len() - 3..], &[255, 0, 0]);
    }

    #[test]
    fn grid_is_deterministic() {
        let spec = GridSpec {
            fixed: [(Position::B, 2.0), (Position::C, 5.0)],
            x_axis: axis(Position::A, 0.0, 12.0, 16),
            y_axis: axis(Position::D, 0.0, 12.0, 16),
            clamp: 100.0,
            search: SearchConfig::default(),
        };
        let g1 = compute_grid(&spec).unwrap();
        let g2 = compute_grid(&spec).unwrap();
        assert_eq!(g1, g2);
        let mut csv1 = Vec::new();
        let mut csv2 = Vec::new();
        write_csv(&g1, &mut csv1).unwrap();
        write_csv(&g2, &mut csv2).unwrap();
        assert_eq!(csv1, csv2);
        assert_eq!(render_ppm(&g1), render_ppm(&g2));
    }
}

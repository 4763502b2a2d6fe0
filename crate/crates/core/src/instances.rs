//! Benchmark matrix families and the CSV matrix format.
//!
//! Draw order is part of the format: a generator seeded identically always
//! yields the same matrix.
//!
//! * uniform: entries row by row, one fair bit each (`true` → `+1`).
//! * corner: the `n` column points, then the `m` row points; each point is
//!   `(x, y)` with two uniform draws.
//! * halfspace: the `n` column points, then per halfspace: edge bit for `a`
//!   (`true` → left edge), position of `a`, edge bit for `b` (`true` → right
//!   edge), position of `b`, side bit (`true` → above).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::DenseMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Uniform,
    Corner,
    Halfspace,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 3] = [MatrixKind::Uniform, MatrixKind::Corner, MatrixKind::Halfspace];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Uniform => "uniform",
            MatrixKind::Corner => "corner",
            MatrixKind::Halfspace => "halfspace",
        }
    }
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(MatrixKind::Uniform),
            "corner" | "corner2d" | "2d-corner" => Ok(MatrixKind::Corner),
            "halfspace" | "halfspace2d" | "2d-halfspace" => Ok(MatrixKind::Halfspace),
            other => Err(Error::InvalidParameter(format!("unknown matrix kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: MatrixKind,
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<DenseMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::EmptyShape {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut rng = crate::rng::seeded(self.seed);
        Ok(generate(self.kind, self.rows, self.cols, &mut rng))
    }
}

pub fn generate<R: Rng + ?Sized>(kind: MatrixKind, m: usize, n: usize, rng: &mut R) -> DenseMatrix {
    match kind {
        MatrixKind::Uniform => gen_uniform(m, n, rng),
        MatrixKind::Corner => gen_corner(m, n, rng),
        MatrixKind::Halfspace => gen_halfspace(m, n, rng),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let x = rng.random::<f64>();
        let y = rng.random::<f64>();
        Self { x, y }
    }

    /// Strict dominance in both coordinates.
    pub fn dominates(&self, other: &Point) -> bool {
        self.x > other.x && self.y > other.y
    }
}

/// I.i.d. uniform ±1 entries.
pub fn gen_uniform<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> DenseMatrix {
    DenseMatrix::from_fn(m, n, |_, _| if rng.random::<bool>() { 1.0 } else { -1.0 })
}

/// Dominance incidence: entry `(i, j)` is 1 when row point `qᵢ` dominates
/// column point `pⱼ`.
pub fn corner_matrix(columns: &[Point], rows: &[Point]) -> DenseMatrix {
    DenseMatrix::from_fn(rows.len(), columns.len(), |i, j| {
        f64::from(u8::from(rows[i].dominates(&columns[j])))
    })
}

pub fn gen_corner<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> DenseMatrix {
    let p: Vec<Point> = (0..n).map(|_| Point::random(rng)).collect();
    let q: Vec<Point> = (0..m).map(|_| Point::random(rng)).collect();
    corner_matrix(&p, &q)
}

/// The region on one side of the line through `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Halfspace {
    pub a: Point,
    pub b: Point,
    pub above: bool,
}

impl Halfspace {
    /// Points on the line belong to the "above" side.
    pub fn contains(&self, p: &Point) -> bool {
        let on_or_above = self.side(p) >= 0.0;
        on_or_above == self.above
    }

    /// Positive above the line, zero on it. A vertical line treats its left
    /// side as above.
    fn side(&self, p: &Point) -> f64 {
        let (mut dx, mut dy) = (self.b.x - self.a.x, self.b.y - self.a.y);
        if dx < 0.0 || (dx == 0.0 && dy > 0.0) {
            dx = -dx;
            dy = -dy;
        }
        dx * (p.y - self.a.y) - dy * (p.x - self.a.x)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let a = if rng.random::<bool>() {
            Point::new(0.0, rng.random::<f64>())
        } else {
            Point::new(rng.random::<f64>(), 1.0)
        };
        let b = if rng.random::<bool>() {
            Point::new(1.0, rng.random::<f64>())
        } else {
            Point::new(rng.random::<f64>(), 0.0)
        };
        let above = rng.random::<bool>();
        Self { a, b, above }
    }
}

pub fn halfspace_matrix(columns: &[Point], rows: &[Halfspace]) -> DenseMatrix {
    DenseMatrix::from_fn(rows.len(), columns.len(), |i, j| {
        f64::from(u8::from(rows[i].contains(&columns[j])))
    })
}

pub fn gen_halfspace<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> DenseMatrix {
    let p: Vec<Point> = (0..n).map(|_| Point::random(rng)).collect();
    let h: Vec<Halfspace> = (0..m).map(|_| Halfspace::random(rng)).collect();
    halfspace_matrix(&p, &h)
}

/// One row per line, comma-separated, LF-terminated. Values use the shortest
/// decimal form that parses back to the identical `f64`.
pub fn matrix_to_csv(a: &DenseMatrix) -> String {
    let mut out = String::with_capacity(a.rows() * a.cols() * 4);
    for i in 0..a.rows() {
        for (j, v) in a.row(i).iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_csv(a: &DenseMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, matrix_to_csv(a))?;
    Ok(())
}

/// Parses the CSV matrix format. Rows and columns in errors are 1-based.
///
/// A trailing newline is optional and `\r\n` endings are tolerated; blank
/// lines anywhere but the end are errors.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let body = body.strip_suffix('\r').unwrap_or(body);
    if body.trim().is_empty() {
        return Err(Error::Parse {
            row: 1,
            col: 1,
            msg: "empty input".into(),
        });
    }
    let mut data = Vec::new();
    let mut cols = 0;
    let mut rows = 0;
    for (i, line) in body.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let mut found = 0;
        for (j, field) in line.split(',').enumerate() {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                row: i + 1,
                col: j + 1,
                msg: format!("`{field}` is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: i + 1,
                    col: j + 1,
                    msg: format!("`{field}` is not finite"),
                });
            }
            data.push(value);
            found += 1;
        }
        if i == 0 {
            cols = found;
        } else if found != cols {
            return Err(Error::RaggedRows {
                row: i + 1,
                expected: cols,
                found,
            });
        }
        rows += 1;
    }
    DenseMatrix::new(rows, cols, data)
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    parse_matrix_csv(&fs::read_to_string(path)?)
}

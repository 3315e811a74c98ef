//! Voxelization of implicit surfaces into cubical models, and the
//! intersection graphs of those models.
//!
//! The grid is anchored at the origin: cell `i = (i_1, …, i_n)` is the
//! closed cube `Π [i_k·L, (i_k+1)·L]`. A cell belongs to the model when
//! the closed cube meets the surface — for circles and spheres this is
//! decided exactly in rational arithmetic (tangency counts), for general
//! scalar fields approximately from corner samples. Two cells of a model
//! are adjacent in its intersection graph when their closed cubes share at
//! least a point, i.e. when their index vectors differ by at most 1 in
//! every coordinate (Chebyshev distance 1).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicalError {
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("edge length must be positive")]
    NonPositiveEdgeLength,
    #[error("radius must be non-negative")]
    NegativeRadius,
    #[error("scalar fields must be 2- or 3-dimensional, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("grid index exceeds the representable range")]
    GridTooLarge,
    #[error("cannot parse {input:?} as a number: {reason}")]
    Parse { input: String, reason: String },
}

/// A sampled scalar field f; the surface is its zero set. Cells are
/// selected from corner samples: a sign change across corners, or any
/// corner within `tolerance` of zero. This is approximate — a surface
/// that dips into a cell without reaching a corner is missed.
#[derive(Clone)]
pub struct ScalarField {
    pub dimension: usize,
    pub tolerance: f64,
    pub f: FieldFn,
}

/// Shared, thread-safe scalar function of a point, used by [`ScalarField`].
pub type FieldFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("dimension", &self.dimension)
            .field("tolerance", &self.tolerance)
            .field("f", &"<fn>")
            .finish()
    }
}

/// An implicit surface to voxelize. Circles and spheres are handled
/// exactly; arbitrary fields by corner sampling.
#[derive(Debug, Clone)]
pub enum ImplicitSurface {
    Circle {
        center: [BigRational; 2],
        radius: BigRational,
    },
    Sphere {
        center: [BigRational; 3],
        radius: BigRational,
    },
    Field(ScalarField),
}

impl ImplicitSurface {
    pub fn dimension(&self) -> usize {
        match self {
            ImplicitSurface::Circle { .. } => 2,
            ImplicitSurface::Sphere { .. } => 3,
            ImplicitSurface::Field(field) => field.dimension,
        }
    }
}

/// An axis-aligned search box: cells overlapping it are candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lo: Vec<BigRational>,
    pub hi: Vec<BigRational>,
}

/// A finite set of grid cells with a common edge length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicalModel {
    pub n: usize,
    #[serde(rename = "L")]
    pub edge_length: f64,
    pub cubes: Vec<Vec<i64>>,
}

impl CubicalModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serialization cannot fail")
    }

    pub fn parse_json(text: &str) -> Result<Self, CubicalError> {
        serde_json::from_str(text).map_err(|e| CubicalError::Parse {
            input: "cubical model".to_string(),
            reason: e.to_string(),
        })
    }
}

/// Voxelization output. `boundary_contact` reports that some selected
/// cell touches the search box's own boundary — a sign the bounds may
/// have clipped the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct Voxelization {
    pub model: CubicalModel,
    pub boundary_contact: bool,
}

/// Squared distance range from `center` to the box `Π [lo_k, hi_k]`:
/// `(min over the box, max over the box)` of the squared Euclidean
/// distance. Exact for exact scalar types.
fn box_distance_squared_range<T>(center: &[T], lo: &[T], hi: &[T]) -> (T, T)
where
    T: Clone + PartialOrd + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut min_sq = T::zero();
    let mut max_sq = T::zero();
    for ((c, a), b) in center.iter().zip(lo).zip(hi) {
        let below = a.clone() - c.clone(); // > 0 when the box is above c
        let above = c.clone() - b.clone(); // > 0 when the box is below c
        let near = if below > T::zero() {
            below
        } else if above > T::zero() {
            above
        } else {
            T::zero()
        };
        let to_lo = if c.clone() - a.clone() > T::zero() {
            c.clone() - a.clone()
        } else {
            a.clone() - c.clone()
        };
        let to_hi = if c.clone() - b.clone() > T::zero() {
            c.clone() - b.clone()
        } else {
            b.clone() - c.clone()
        };
        let far = if to_lo > to_hi { to_lo } else { to_hi };
        min_sq = min_sq + near.clone() * near;
        max_sq = max_sq + far.clone() * far;
    }
    (min_sq, max_sq)
}

fn rational_to_i64(x: &BigInt) -> Result<i64, CubicalError> {
    x.to_i64().ok_or(CubicalError::GridTooLarge)
}

/// Selects the grid cells (closed cubes of side `edge_length`, grid
/// anchored at the origin) that meet the surface, restricted to cells
/// overlapping `bounds`.
pub fn voxelize(
    surface: &ImplicitSurface,
    bounds: &Bounds,
    edge_length: &BigRational,
) -> Result<Voxelization, CubicalError> {
    let n = surface.dimension();
    if !(2..=3).contains(&n) {
        return Err(CubicalError::UnsupportedDimension(n));
    }
    if bounds.lo.len() != n {
        return Err(CubicalError::DimensionMismatch {
            expected: n,
            got: bounds.lo.len(),
        });
    }
    if bounds.hi.len() != n {
        return Err(CubicalError::DimensionMismatch {
            expected: n,
            got: bounds.hi.len(),
        });
    }
    if !edge_length.is_positive() {
        return Err(CubicalError::NonPositiveEdgeLength);
    }
    match surface {
        ImplicitSurface::Circle { radius, .. } | ImplicitSurface::Sphere { radius, .. } => {
            if radius.is_negative() {
                return Err(CubicalError::NegativeRadius);
            }
        }
        ImplicitSurface::Field(_) => {}
    }

    // Cells overlapping [lo, hi] along axis k: floor(lo/L) ..= ceil(hi/L) - 1.
    let mut first = Vec::with_capacity(n);
    let mut last = Vec::with_capacity(n);
    for k in 0..n {
        first.push(rational_to_i64(&(&bounds.lo[k] / edge_length).floor().to_integer())?);
        last.push(rational_to_i64(&((&bounds.hi[k] / edge_length).ceil().to_integer() - 1))?);
    }

    let mut cubes: Vec<Vec<i64>> = Vec::new();
    let mut boundary_contact = false;
    let mut index: Vec<i64> = first.clone();
    if first.iter().zip(&last).all(|(f, l)| f <= l) {
        'cells: loop {
            if cell_meets_surface(surface, &index, edge_length) {
                if index
                    .iter()
                    .zip(first.iter().zip(&last))
                    .any(|(i, (f, l))| i == f || i == l)
                {
                    boundary_contact = true;
                }
                cubes.push(index.clone());
            }
            // Odometer increment over the index box.
            for k in (0..n).rev() {
                if index[k] < last[k] {
                    index[k] += 1;
                    index[k + 1..].copy_from_slice(&first[k + 1..]);
                    continue 'cells;
                }
            }
            break;
        }
    }
    cubes.sort();

    Ok(Voxelization {
        model: CubicalModel {
            n,
            edge_length: edge_length
                .to_f64()
                .ok_or(CubicalError::GridTooLarge)?,
            cubes,
        },
        boundary_contact,
    })
}

fn cell_meets_surface(surface: &ImplicitSurface, index: &[i64], edge_length: &BigRational) -> bool {
    match surface {
        ImplicitSurface::Circle { center, radius } => {
            exact_cell_meets_round_surface(center, radius, index, edge_length)
        }
        ImplicitSurface::Sphere { center, radius } => {
            exact_cell_meets_round_surface(center, radius, index, edge_length)
        }
        ImplicitSurface::Field(field) => {
            let length = edge_length.to_f64().unwrap_or(f64::NAN);
            let corner_count = 1usize << field.dimension;
            let mut any_non_negative = false;
            let mut any_non_positive = false;
            for corner in 0..corner_count {
                let point: Vec<f64> = index
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| {
                        let offset = ((corner >> k) & 1) as f64;
                        (i as f64 + offset) * length
                    })
                    .collect();
                let value = (field.f)(&point);
                if value.abs() <= field.tolerance {
                    return true;
                }
                if value >= 0.0 {
                    any_non_negative = true;
                }
                if value <= 0.0 {
                    any_non_positive = true;
                }
            }
            any_non_negative && any_non_positive
        }
    }
}

/// Exact test: the closed cube meets the circle/sphere of squared radius
/// r² iff min‖x−c‖² ≤ r² ≤ max‖x−c‖² over the cube.
fn exact_cell_meets_round_surface(
    center: &[BigRational],
    radius: &BigRational,
    index: &[i64],
    edge_length: &BigRational,
) -> bool {
    let lo: Vec<BigRational> = index
        .iter()
        .map(|&i| BigRational::from_integer(BigInt::from(i)) * edge_length)
        .collect();
    let hi: Vec<BigRational> = index
        .iter()
        .map(|&i| BigRational::from_integer(BigInt::from(i + 1)) * edge_length)
        .collect();
    let (min_sq, max_sq) = box_distance_squared_range(center, &lo, &hi);
    let r_sq = radius * radius;
    min_sq <= r_sq && r_sq <= max_sq
}

fn cell_label(index: &[i64]) -> VertexLabel {
    let body = index
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",");
    VertexLabel::new(format!("({body})")).expect("cell labels are non-empty")
}

/// The intersection graph of a cubical model: one vertex per cube,
/// labeled by its index vector as "(i,j)" or "(i,j,k)", with an edge
/// whenever two cubes' closed bodies share a point — equivalently, their
/// indices are at Chebyshev distance exactly 1.
pub fn intersection_graph(model: &CubicalModel) -> Graph {
    let present: BTreeSet<&[i64]> = model.cubes.iter().map(Vec::as_slice).collect();
    let vertices = model.cubes.iter().map(|c| cell_label(c));
    let mut edges = Vec::new();
    let n = model.n;
    for cube in &model.cubes {
        // Enumerate the 3^n - 1 neighbor offsets; keep each edge once by
        // only accepting lexicographically larger partners.
        let mut offset = vec![-1i64; n];
        loop {
            if offset.iter().any(|&d| d != 0) {
                let neighbor: Vec<i64> = cube.iter().zip(&offset).map(|(c, d)| c + d).collect();
                if neighbor.as_slice() > cube.as_slice()
                    && present.contains(neighbor.as_slice())
                {
                    edges.push((cell_label(cube), cell_label(&neighbor)));
                }
            }
            let Some(k) = (0..n).rev().find(|&k| offset[k] < 1) else {
                break;
            };
            offset[k] += 1;
            for d in offset.iter_mut().skip(k + 1) {
                *d = -1;
            }
        }
    }
    Graph::from_parts(vertices, edges).expect("cube labels are unique and edges join them")
}

/// The smallest graph behaving like an n-sphere: the join of n+1 pairs of
/// non-adjacent vertices. For n = 0 two isolated points, n = 1 a
/// 4-cycle, n = 2 the octahedron. Labels are p0..pn and q0..qn, with
/// every pair adjacent except each pk–qk.
pub fn minimal_digital_sphere(n: usize) -> Graph {
    let mut vertices = Vec::new();
    for i in 0..=n {
        vertices.push(VertexLabel::new(format!("p{i}")).expect("non-empty"));
        vertices.push(VertexLabel::new(format!("q{i}")).expect("non-empty"));
    }
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            for a in [format!("p{i}"), format!("q{i}")] {
                for b in [format!("p{j}"), format!("q{j}")] {
                    edges.push((
                        VertexLabel::new(&a).expect("non-empty"),
                        VertexLabel::new(&b).expect("non-empty"),
                    ));
                }
            }
        }
    }
    Graph::from_parts(vertices, edges).expect("labels are distinct")
}

/// Parses a number given as an integer ("3"), a decimal ("-2.5"), or a
/// fraction ("5/2") into an exact rational.
pub fn rational_from_decimal(text: &str) -> Result<BigRational, CubicalError> {
    let parse_err = |reason: &str| CubicalError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(parse_err("empty input"));
    }
    if let Some((numer_text, denom_text)) = s.split_once('/') {
        let numer: BigInt = numer_text
            .trim()
            .parse()
            .map_err(|_| parse_err("invalid numerator"))?;
        let denom: BigInt = denom_text
            .trim()
            .parse()
            .map_err(|_| parse_err("invalid denominator"))?;
        if denom.is_zero() {
            return Err(parse_err("zero denominator"));
        }
        return Ok(BigRational::new(numer, denom));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(parse_err("no digits"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(parse_err("expected digits, an optional sign, and one optional decimal point"));
    }
    let numer: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .expect("validated digit string");
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(BigInt::from(sign) * numer, denom))
}

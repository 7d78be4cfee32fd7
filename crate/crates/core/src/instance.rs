//! TSP instances: city coordinates, the precomputed distance matrix and
//! TSPLIB ingestion (EUC_2D node-coordinate files and optimal-tour files).

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// How the Euclidean distance between two cities is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Plain Euclidean distance.
    Real,
    /// Euclidean distance rounded to the nearest integer (TSPLIB `nint`).
    #[default]
    Rounded,
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "real-euclidean" => Ok(Metric::Real),
            "rounded" | "rounded-euclidean" => Ok(Metric::Rounded),
            other => Err(Error::param(
                "metric",
                format!("expected `rounded` or `real`, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Real => "real",
            Metric::Rounded => "rounded",
        })
    }
}

pub fn euclid_distance(a: Point, b: Point, metric: Metric) -> f64 {
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    let d = (dx * dx + dy * dy).sqrt();
    match metric {
        Metric::Real => d,
        Metric::Rounded => (d + 0.5).floor(),
    }
}

/// An immutable symmetric TSP instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    name: String,
    cities: Vec<Point>,
    metric: Metric,
    // row-major n*n
    dist: Vec<f64>,
}

impl TspInstance {
    pub fn new(name: impl Into<String>, cities: Vec<Point>, metric: Metric) -> Result<Self> {
        if cities.is_empty() {
            return Err(Error::Empty("instance needs at least one city"));
        }
        if let Some(i) = cities
            .iter()
            .position(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(Error::param(
                "cities",
                format!("city {i} has non-finite coordinates"),
            ));
        }
        let n = cities.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclid_distance(cities[i], cities[j], metric);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self {
            name: name.into(),
            cities,
            metric,
            dist,
        })
    }

    /// Same cities under a different metric.
    pub fn with_metric(&self, metric: Metric) -> Self {
        Self::new(self.name.clone(), self.cities.clone(), metric)
            .expect("coordinates were already validated")
    }

    /// Parses a TSPLIB file from disk.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        parse_tsplib(&text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cities(&self) -> &[Point] {
        &self.cities
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    /// Always false; an instance holds at least one city.
    pub fn is_empty(&self) -> bool {
        self.cities.is_empty()
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.cities.len() + j]
    }

    /// Closed-tour length, closing edge included.
    pub fn tour_length(&self, order: &[usize]) -> Result<f64> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch {
                tour: order.len(),
                instance: self.len(),
            });
        }
        Ok(self.tour_length_unchecked(order))
    }

    pub(crate) fn tour_length_unchecked(&self, order: &[usize]) -> f64 {
        let Some((&first, _)) = order.split_first() else {
            return 0.0;
        };
        let n = self.cities.len();
        let mut total = 0.0;
        for w in order.windows(2) {
            total += self.dist[w[0] * n + w[1]];
        }
        total + self.dist[order[order.len() - 1] * n + first]
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Splits a `KEY : VALUE` header line. Returns `None` for section markers.
fn header_pair(line: &str) -> Option<(String, &str)> {
    let (key, value) = line.split_once(':')?;
    Some((key.trim().to_ascii_uppercase(), value.trim()))
}

/// Parses the EUC_2D subset of TSPLIB. City indices follow file order; the
/// metric is rounded Euclidean.
pub fn parse_tsplib(text: &str) -> Result<TspInstance> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut found_section = false;

    for (lineno, line) in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        if line.eq_ignore_ascii_case("NODE_COORD_SECTION") {
            found_section = true;
            break;
        }
        if line.eq_ignore_ascii_case("EOF") {
            break;
        }
        let Some((key, value)) = header_pair(line) else {
            return Err(parse_err(lineno, format!("unexpected line `{line}`")));
        };
        match key.as_str() {
            "NAME" => name = value.to_string(),
            "TYPE" => {
                if !value.eq_ignore_ascii_case("TSP") {
                    return Err(parse_err(lineno, format!("unsupported TYPE `{value}`")));
                }
            }
            "DIMENSION" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad DIMENSION `{value}`")))?;
                if n == 0 {
                    return Err(parse_err(lineno, "DIMENSION must be positive"));
                }
                dimension = Some(n);
            }
            "EDGE_WEIGHT_TYPE" => {
                if !value.eq_ignore_ascii_case("EUC_2D") {
                    return Err(parse_err(
                        lineno,
                        format!("unsupported EDGE_WEIGHT_TYPE `{value}` (only EUC_2D)"),
                    ));
                }
                weight_type = Some(value.to_string());
            }
            _ => {}
        }
    }

    let n = dimension.ok_or_else(|| Error::Format("missing DIMENSION".into()))?;
    if weight_type.is_none() {
        return Err(Error::Format("missing EDGE_WEIGHT_TYPE".into()));
    }
    if !found_section {
        return Err(Error::Format("missing NODE_COORD_SECTION".into()));
    }

    let mut cities = Vec::with_capacity(n);
    let mut ids = HashSet::with_capacity(n);
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        if line.eq_ignore_ascii_case("EOF") {
            break;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [id, x, y] = fields[..] else {
            return Err(parse_err(
                lineno,
                format!("expected `<id> <x> <y>`, got `{line}`"),
            ));
        };
        let id: i64 = id
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad node id `{id}`")))?;
        let coord = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(lineno, format!("bad coordinate `{s}`")))
        };
        let point = Point::new(coord(x)?, coord(y)?);
        if !ids.insert(id) {
            return Err(parse_err(lineno, format!("duplicate node id {id}")));
        }
        if cities.len() == n {
            return Err(parse_err(lineno, format!("more than DIMENSION={n} nodes")));
        }
        cities.push(point);
    }
    if cities.len() != n {
        return Err(Error::Format(format!(
            "DIMENSION is {n} but {} nodes were listed",
            cities.len()
        )));
    }
    TspInstance::new(name, cities, Metric::Rounded)
}

/// Parses a TSPLIB `TOUR_SECTION` (1-based node ids, `-1` terminated) into a
/// 0-based visiting order.
pub fn parse_tsplib_tour(text: &str) -> Result<Vec<usize>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut found = false;
    for (_, line) in lines.by_ref() {
        if line.eq_ignore_ascii_case("TOUR_SECTION") {
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::Format("missing TOUR_SECTION".into()));
    }
    let mut order = Vec::new();
    'outer: for (lineno, line) in lines {
        if line.eq_ignore_ascii_case("EOF") {
            break;
        }
        for tok in line.split_whitespace() {
            let id: i64 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad node id `{tok}`")))?;
            if id == -1 {
                break 'outer;
            }
            if id < 1 {
                return Err(parse_err(lineno, format!("node id {id} must be >= 1")));
            }
            order.push(id as usize - 1);
        }
    }
    Ok(order)
}

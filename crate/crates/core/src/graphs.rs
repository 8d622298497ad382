//! Circulant graphs `Cay(Z_n, S)`, stored as the order and connection set only.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::numtheory::{signed_square_units, units_mod};

/// Which of the two graph families a graph or spectrum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Unitary Cayley graph `X_n = Cay(Z_n, U(n))`.
    #[serde(rename = "X")]
    Unitary,
    /// Quadratic unitary Cayley graph `G_n = Cay(Z_n, T_n)`.
    #[serde(rename = "G")]
    QuadraticUnitary,
}

impl Family {
    pub fn graph(self, n: u64) -> Result<CirculantGraph> {
        match self {
            Family::Unitary => unitary_graph(n),
            Family::QuadraticUnitary => quadratic_unitary_graph(n),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Unitary => "X",
            Family::QuadraticUnitary => "G",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Family {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Family::Unitary),
            "G" | "g" => Ok(Family::QuadraticUnitary),
            other => domain(format!("unknown graph family {other:?} (expected X or G)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantGraph {
    n: u64,
    connection: Vec<u64>,
}

impl CirculantGraph {
    /// Validates that `connection` is a symmetric subset of `[1, n-1]`.
    pub fn new(n: u64, mut connection: Vec<u64>) -> Result<Self> {
        if n < 2 {
            return domain(format!("circulant graph needs n >= 2, got {n}"));
        }
        connection.sort_unstable();
        connection.dedup();
        if let Some(&s) = connection.iter().find(|&&s| s == 0 || s >= n) {
            return domain(format!("connection element {s} outside [1, {}]", n - 1));
        }
        if let Some(&s) = connection.iter().find(|&&s| connection.binary_search(&(n - s)).is_err()) {
            return domain(format!("connection set not symmetric: {s} present, {} missing", n - s));
        }
        Ok(Self { n, connection })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn connection(&self) -> &[u64] {
        &self.connection
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    /// Neighbours of `v`, sorted.
    pub fn adjacency_row(&self, v: u64) -> Result<Vec<u64>> {
        if v >= self.n {
            return domain(format!("vertex {v} out of range for n = {}", self.n));
        }
        let mut row: Vec<u64> = self.connection.iter().map(|s| (v + s) % self.n).collect();
        row.sort_unstable();
        Ok(row)
    }

    pub fn edges(&self) -> Vec<(u64, u64)> {
        (0..self.n)
            .flat_map(|a| {
                self.connection
                    .iter()
                    .map(move |s| (a, (a + s) % self.n))
                    .filter(|(a, b)| a < b)
            })
            .collect()
    }

    /// Graphviz rendering of the edge set.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "connection": self.connection })
    }
}

pub fn unitary_graph(n: u64) -> Result<CirculantGraph> {
    if n < 2 {
        return domain(format!("X_n needs n >= 2, got {n}"));
    }
    CirculantGraph::new(n, units_mod(n))
}

pub fn quadratic_unitary_graph(n: u64) -> Result<CirculantGraph> {
    if n < 2 {
        return domain(format!("G_n needs n >= 2, got {n}"));
    }
    CirculantGraph::new(n, signed_square_units(n))
}

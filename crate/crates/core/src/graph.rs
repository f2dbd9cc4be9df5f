//! Loop-free multigraphs, the cycle / Cartesian-product constructors and
//! exact Laplacian matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::matrix::IntegerMatrix;

/// Undirected multigraph without self-loops.
///
/// Edges are kept as a map from the normalised pair `(min, max)` to its
/// multiplicity, so a missing key means "not adjacent".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

impl Multigraph {
    /// Edgeless graph on `vertex_count` vertices.
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(invalid("a graph needs at least one vertex"));
        }
        Ok(Multigraph {
            vertex_count,
            edges: BTreeMap::new(),
        })
    }

    /// Adds `multiplicity` parallel edges between `u` and `v`.
    pub fn add_edge(&mut self, u: usize, v: usize, multiplicity: u64) -> Result<()> {
        if u == v {
            return Err(invalid(format!("self-loop at vertex {u}")));
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(invalid(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.vertex_count
            )));
        }
        if multiplicity == 0 {
            return Err(invalid("edge multiplicity must be positive"));
        }
        *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Multiplicity `a_uv` (0 when not adjacent).
    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    pub fn degree(&self, u: usize) -> u64 {
        self.edges
            .iter()
            .filter(|((a, b), _)| *a == u || *b == u)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Parses the edge-list text format: one `u v [multiplicity]` per line,
    /// `#` comments, and an optional `vertices N` header. Without the header
    /// the vertex count is one more than the largest id seen.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut raw = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: lineno, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "vertices" {
                if toks.len() != 2 {
                    return Err(parse_err("expected `vertices N`".into()));
                }
                if declared.is_some() {
                    return Err(parse_err("duplicate `vertices` header".into()));
                }
                let n = toks[1]
                    .parse::<usize>()
                    .map_err(|_| parse_err(format!("bad vertex count {:?}", toks[1])))?;
                declared = Some(n);
                continue;
            }
            if !(2..=3).contains(&toks.len()) {
                return Err(parse_err(format!("expected `u v [multiplicity]`, got {line:?}")));
            }
            let num = |t: &str| {
                t.parse::<u64>()
                    .map_err(|_| parse_err(format!("bad number {t:?}")))
            };
            let u = num(toks[0])? as usize;
            let v = num(toks[1])? as usize;
            let mult = if toks.len() == 3 { num(toks[2])? } else { 1 };
            raw.push((lineno, u, v, mult));
        }
        let inferred = raw.iter().map(|&(_, u, v, _)| u.max(v) + 1).max();
        let vertex_count = match (declared, inferred) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "no edges and no `vertices` header".into(),
                })
            }
        };
        let mut g = Multigraph::new(vertex_count).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        for (line, u, v, mult) in raw {
            g.add_edge(u, v, mult).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }
}

/// The cycle `C_n` on vertices `0..n`.
pub fn cycle(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(invalid(format!("cycle length must be at least 3, got {n}")));
    }
    let mut g = Multigraph::new(n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, 1)?;
    }
    Ok(g)
}

/// Cartesian product; vertex `(u, v)` is encoded as `u + v * |V1|`.
pub fn cartesian_product(g1: &Multigraph, g2: &Multigraph) -> Multigraph {
    let n1 = g1.vertex_count;
    let n2 = g2.vertex_count;
    let mut g = Multigraph {
        vertex_count: n1 * n2,
        edges: BTreeMap::new(),
    };
    let encode = |u: usize, v: usize| u + v * n1;
    for v in 0..n2 {
        for ((a, b), m) in g1.edges() {
            g.add_edge(encode(a, v), encode(b, v), m).expect("valid product edge");
        }
    }
    for u in 0..n1 {
        for ((a, b), m) in g2.edges() {
            g.add_edge(encode(u, a), encode(u, b), m).expect("valid product edge");
        }
    }
    g
}

/// `C4 × Cn` with vertex `v_j^i` (layer `i`, position `j`) encoded as `4i + j`.
pub fn c4xcn(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(invalid(format!("n must be at least 3, got {n}")));
    }
    let mut g = Multigraph::new(4 * n)?;
    let id = |i: usize, j: usize| 4 * (i % n) + (j % 4);
    for i in 0..n {
        for j in 0..4 {
            g.add_edge(id(i, j), id(i, j + 1), 1)?;
            g.add_edge(id(i, j), id(i + 1, j), 1)?;
        }
    }
    Ok(g)
}

/// `L(G)`: degrees on the diagonal, `-a_uv` off it.
pub fn laplacian(g: &Multigraph) -> IntegerMatrix {
    let n = g.vertex_count;
    let mut l = IntegerMatrix::zeros(n, n);
    for ((u, v), m) in g.edges() {
        let m = BigInt::from(m);
        l[(u, v)] -= &m;
        l[(v, u)] -= &m;
        l[(u, u)] += &m;
        l[(v, v)] += &m;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn cycles() {
        assert!(cycle(2).is_err());
        let c3 = cycle(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert_eq!(
            laplacian(&c3),
            IntegerMatrix::from_array(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
        );
        let c4 = cycle(4).unwrap();
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
    }

    #[test]
    fn double_edge_laplacian() {
        let mut g = Multigraph::new(2).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 0, 1).unwrap();
        assert_eq!(laplacian(&g), IntegerMatrix::from_array(&[[2, -2], [-2, 2]]));
    }

    #[test]
    fn invalid_edges() {
        let mut g = Multigraph::new(3).unwrap();
        assert!(g.add_edge(1, 1, 1).is_err());
        assert!(g.add_edge(0, 3, 1).is_err());
        assert!(g.add_edge(0, 1, 0).is_err());
        assert!(Multigraph::new(0).is_err());
    }

    #[test]
    fn c4xcn_shape() {
        assert!(c4xcn(2).is_err());
        for (n, edges) in [(3, 24), (4, 32)] {
            let g = c4xcn(n).unwrap();
            assert_eq!(g.vertex_count(), 4 * n);
            assert_eq!(g.edge_count(), edges);
            assert!((0..4 * n).all(|v| g.degree(v) == 4));
            let l = laplacian(&g);
            assert!((0..4 * n).all(|i| l[(i, i)] == BigInt::from(4)));
        }
    }

    #[test]
    fn product_matches_direct_construction() {
        for n in [3, 5] {
            let p = cartesian_product(&cycle(4).unwrap(), &cycle(n).unwrap());
            assert_eq!(p, c4xcn(n).unwrap());
        }
    }

    #[test]
    fn product_with_single_vertex() {
        let k1 = Multigraph::new(1).unwrap();
        let c5 = cycle(5).unwrap();
        assert_eq!(cartesian_product(&k1, &c5), c5);
        assert_eq!(cartesian_product(&c5, &k1), c5);
    }

    #[test]
    fn c3_squared() {
        let c3 = cycle(3).unwrap();
        let g = cartesian_product(&c3, &c3);
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 18));
        assert!((0..9).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let l = laplacian(&c4xcn(4).unwrap());
        assert!(l.is_symmetric());
        for i in 0..l.rows() {
            let s: BigInt = l.row(i).iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn edge_list_format() {
        let g = Multigraph::parse_edge_list("# triangle\n0 1\n1 2 # inline\n2 0 1\n").unwrap();
        assert_eq!(g, cycle(3).unwrap());

        let g = Multigraph::parse_edge_list("vertices 4\n0 1 3\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.multiplicity(1, 0), 3);

        let g = Multigraph::parse_edge_list("0 1\n0 1\n").unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);

        assert!(Multigraph::parse_edge_list("").is_err());
        assert!(Multigraph::parse_edge_list("1 1\n").is_err());
        assert!(Multigraph::parse_edge_list("0 x\n").is_err());
        assert!(Multigraph::parse_edge_list("0 1 2 3\n").is_err());
        assert!(Multigraph::parse_edge_list("vertices 2\n0 5\n").is_err());
        let err = Multigraph::parse_edge_list("0 1\n\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}

use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};

/// Named graph families.
///
/// The textual form (used by the CLI) is `C5`, `P6`, `K4`, `E3` (edgeless),
/// `K3,3`, `M4` (perfect matching on 4 edges), `Q4`, `Petersen`, `Prism`,
/// with `+` for disjoint union: `C4+E3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    EmptyGraph(usize),
    CompleteBipartite(usize, usize),
    Matching(usize),
    Hypercube(u32),
    Petersen,
    TriangularPrism,
    DisjointUnion(Vec<FamilySpec>),
}

pub fn build_family(spec: &FamilySpec) -> Result<Graph, GraphError> {
    use FamilySpec::*;
    let invalid = |msg: &str| Err(GraphError::InvalidParameter(msg.to_string()));
    Ok(match *spec {
        Cycle(n) => {
            if n < 3 {
                return invalid("a cycle needs at least 3 vertices");
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        Complete(n) => Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))),
        EmptyGraph(n) => Graph::empty(n),
        CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return invalid("complete bipartite sides must be non-empty");
            }
            Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        }
        Matching(m) => Graph::from_edges(2 * m, (0..m).map(|i| (2 * i, 2 * i + 1))),
        Hypercube(k) => {
            if k > 20 {
                return invalid("hypercube dimension above 20");
            }
            let n = 1usize << k;
            Graph::from_edges(n, (0..n).flat_map(|i| (0..k).map(move |b| (i, i ^ (1 << b)))).filter(|&(i, j)| i < j))
        }
        Petersen => Graph::from_edges(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
        ),
        TriangularPrism => Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
        DisjointUnion(ref parts) => {
            let mut g = Graph::empty(0);
            for p in parts {
                g = g.disjoint_union(&build_family(p)?);
            }
            g
        }
    })
}

impl FromStr for FamilySpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('+') {
            return s.split('+').map(str::parse).collect::<Result<Vec<_>, _>>().map(FamilySpec::DisjointUnion);
        }
        let unknown = || GraphError::UnknownFamily(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match s.to_ascii_lowercase().as_str() {
            "petersen" => return Ok(FamilySpec::Petersen),
            "prism" | "triangularprism" => return Ok(FamilySpec::TriangularPrism),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Kbar") {
            return Ok(FamilySpec::EmptyGraph(num(rest)?));
        }
        let (head, rest) = s.split_at(s.chars().next().ok_or_else(unknown)?.len_utf8());
        Ok(match head {
            "C" => FamilySpec::Cycle(num(rest)?),
            "P" => FamilySpec::Path(num(rest)?),
            "E" => FamilySpec::EmptyGraph(num(rest)?),
            "M" => FamilySpec::Matching(num(rest)?),
            "Q" => FamilySpec::Hypercube(num(rest)? as u32),
            "K" => match rest.split_once(',') {
                Some((a, b)) => FamilySpec::CompleteBipartite(num(a)?, num(b)?),
                None => FamilySpec::Complete(num(rest)?),
            },
            _ => return Err(unknown()),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Cycle(n) => write!(f, "C{n}"),
            Path(n) => write!(f, "P{n}"),
            Complete(n) => write!(f, "K{n}"),
            EmptyGraph(n) => write!(f, "E{n}"),
            CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            Matching(m) => write!(f, "M{m}"),
            Hypercube(k) => write!(f, "Q{k}"),
            Petersen => write!(f, "Petersen"),
            TriangularPrism => write!(f, "Prism"),
            DisjointUnion(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn cycle_four() {
        let g = build("C4");
        assert_eq!((g.order(), g.edge_count()), (4, 4));
        assert!(g.is_regular(2));
    }

    #[test]
    fn hypercube_uses_binary_adjacency() {
        let q4 = build("Q4");
        assert_eq!((q4.order(), q4.edge_count()), (16, 32));
        assert!(q4.has_edge(0, 1));
        assert!(!q4.has_edge(0, 3));
        for k in 0..8u32 {
            let q = build_family(&FamilySpec::Hypercube(k)).unwrap();
            assert!(q.is_regular(k as usize));
            assert_eq!(q.edge_count(), k as usize * (1 << k) / 2);
        }
    }

    #[test]
    fn disjoint_union_relabels_consecutively() {
        let g = build("C4+E3");
        assert_eq!((g.order(), g.edge_count()), (7, 4));
        let g = build("K2+K2");
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn named_graphs() {
        let p = build("Petersen");
        assert!(p.is_regular(3) && p.edge_count() == 15 && p.is_connected());
        let prism = build("Prism");
        assert!(prism.is_regular(3) && prism.edge_count() == 9);
        let k33 = build("K3,3");
        assert!(k33.is_regular(3) && !k33.has_odd_cycle());
        assert_eq!(build("M3").edge_count(), 3);
        assert_eq!(build("Kbar5").edge_count(), 0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(build_family(&FamilySpec::Cycle(2)), Err(GraphError::InvalidParameter(_))));
        assert!(matches!(
            build_family(&FamilySpec::CompleteBipartite(0, 3)),
            Err(GraphError::InvalidParameter(_))
        ));
        assert!("X9".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["C4+E3", "K3,3", "Q4", "Petersen", "M5", "P6", "K4"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }
}

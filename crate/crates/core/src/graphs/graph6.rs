//! graph6 encoding (McKay's `formats.txt`).
//!
//! Header: `n + 63` for `n <= 62`, otherwise `126` followed by three bytes of
//! 6 bits each. The body is the upper triangle of the adjacency matrix in
//! column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed 6 bits per byte,
//! big-endian, each byte offset by 63 and the last one zero-padded.

use thiserror::Error;

use super::Graph;

/// Largest order accepted or produced.
pub const GRAPH6_MAX_ORDER: usize = 1 << 16;

const BIAS: u8 = 63;
const LONG: u8 = 126;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("graph6 body is truncated: expected {expected} bytes, found {found}")]
    TruncatedBody { expected: usize, found: usize },
    #[error("graph6 body has nonzero padding bits or extra bytes")]
    TrailingBits,
    #[error("byte {0:#04x} is outside the graph6 range 63..=126")]
    InvalidByte(u8),
    #[error("graphs with {0} vertices are not supported (limit {GRAPH6_MAX_ORDER})")]
    Unsupported(usize),
}

fn check(b: u8) -> Result<u8, Graph6Error> {
    if (BIAS..=LONG).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(Graph6Error::InvalidByte(b))
    }
}

fn parse_order(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    match bytes {
        [] => Err(Graph6Error::MalformedHeader),
        [LONG, LONG, ..] => Err(Graph6Error::Unsupported(usize::MAX)),
        [LONG, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::MalformedHeader);
            }
            let mut n = 0usize;
            for &b in &rest[..3] {
                n = n << 6 | check(b).map_err(|_| Graph6Error::MalformedHeader)? as usize;
            }
            if n < 63 {
                return Err(Graph6Error::MalformedHeader);
            }
            if n > GRAPH6_MAX_ORDER {
                return Err(Graph6Error::Unsupported(n));
            }
            Ok((n, &rest[3..]))
        }
        [b, rest @ ..] => Ok((check(*b).map_err(|_| Graph6Error::MalformedHeader)? as usize, rest)),
    }
}

/// Decodes one graph6 string. A leading `>>graph6<<` marker and surrounding
/// ASCII whitespace are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let text = text.trim_ascii();
    let text = text.strip_prefix(b">>graph6<<").unwrap_or(text);
    let (n, body) = parse_order(text)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::TruncatedBody {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingBits);
    }
    let mut g = Graph::empty(n);
    let (mut i, mut j) = (0usize, 1usize);
    for (k, &b) in body.iter().enumerate() {
        let v = check(b)?;
        for bit in 0..6 {
            let pos = 6 * k + bit;
            let set = v >> (5 - bit) & 1 == 1;
            if pos >= nbits {
                if set {
                    return Err(Graph6Error::TrailingBits);
                }
                continue;
            }
            if set {
                g.add_edge(i, j);
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(g)
}

/// Parses a newline-separated graph6 stream, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| parse_graph6(l.as_bytes()).map_err(|e| (k + 1, e)))
        .collect()
}

pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Graph6Error::Unsupported(n));
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(LONG);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Hand packing: K_2 has the single bit x(0,1)=1 -> 100000b = 32 -> 32+63 = '_'.
    // K_4 has six bits all set -> 111111b = 63 -> 126 = '~'.
    #[test]
    fn small_complete_graphs() {
        let k1 = parse_graph6(b"@").unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let k2 = parse_graph6(b"A_").unwrap();
        assert_eq!((k2.order(), k2.edge_count()), (2, 1));
        let k4 = parse_graph6(b"C~").unwrap();
        assert_eq!((k4.order(), k4.edge_count()), (4, 6));
        assert_eq!(emit_graph6(&k1).unwrap(), "@");
        assert_eq!(emit_graph6(&k2).unwrap(), "A_");
        assert_eq!(emit_graph6(&Graph::empty(0)).unwrap(), "?");
    }

    #[test]
    fn column_order_of_bits() {
        // x(0,1) x(0,2) x(1,2) = 0 0 1 -> 001000b = 8 -> 'G'
        let g = parse_graph6(b"BG").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn error_cases() {
        assert_eq!(parse_graph6(b""), Err(Graph6Error::MalformedHeader));
        assert_eq!(parse_graph6(b"C"), Err(Graph6Error::TruncatedBody { expected: 1, found: 0 }));
        // K_2 only uses one of the six bits.
        assert_eq!(parse_graph6(b"A`"), Err(Graph6Error::TrailingBits));
        assert_eq!(parse_graph6(b"A__"), Err(Graph6Error::TrailingBits));
        assert_eq!(parse_graph6(b"C\x7f"), Err(Graph6Error::InvalidByte(0x7f)));
        assert!(matches!(parse_graph6(b"~~??????"), Err(Graph6Error::Unsupported(_))));
        // 4-byte header for n = 2^17 is above the ceiling.
        assert_eq!(parse_graph6(b"~_??"), Err(Graph6Error::Unsupported(1 << 17)));
    }

    #[test]
    fn long_header_round_trip() {
        let mut g = Graph::empty(100);
        g.add_edge(0, 99);
        g.add_edge(41, 42);
        let s = emit_graph6(&g).unwrap();
        assert!(s.starts_with("~?@c"));
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn stream_with_header_marker() {
        let gs = parse_graph6_lines(">>graph6<<A_\n\nC~\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(parse_graph6_lines("A_\nA`\n").unwrap_err().0, 2);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=16).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            g.add_edge(i, j);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn parse_inverts_emit(g in arb_graph()) {
            let s = emit_graph6(&g).unwrap();
            let back = parse_graph6(s.as_bytes()).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(emit_graph6(&back).unwrap(), s);
        }
    }
}

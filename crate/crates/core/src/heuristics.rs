//! Local similarity indices. Every index is a function of the two neighbor
//! sets and of the common neighborhood `Γu ∩ Γv`; any formula whose
//! denominator vanishes scores 0.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{intersect_into, intersection_size, Graph, NodeId, Pair};
use crate::split::{PairSet, Polarity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeuristicId {
    /// Adamic-Adar
    AA,
    /// Common neighbours
    CN,
    /// Resource allocation
    RA,
    /// Preferential attachment
    PA,
    /// Jaccard
    JA,
    /// Salton (cosine)
    SA,
    /// Sørensen
    SO,
    /// Hub promoted
    HPI,
    /// Hub depressed
    HDI,
    /// Local Leicht-Holme-Newman
    LLHN,
    /// Individual attraction
    IA,
    /// Cannistraci-Alanis-Ravasi
    CAR,
    /// Clustering-coefficient link prediction
    CCLP,
}

impl HeuristicId {
    pub const ALL: [HeuristicId; 13] = [
        HeuristicId::AA,
        HeuristicId::CN,
        HeuristicId::RA,
        HeuristicId::PA,
        HeuristicId::JA,
        HeuristicId::SA,
        HeuristicId::SO,
        HeuristicId::HPI,
        HeuristicId::HDI,
        HeuristicId::LLHN,
        HeuristicId::IA,
        HeuristicId::CAR,
        HeuristicId::CCLP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HeuristicId::AA => "AA",
            HeuristicId::CN => "CN",
            HeuristicId::RA => "RA",
            HeuristicId::PA => "PA",
            HeuristicId::JA => "JA",
            HeuristicId::SA => "SA",
            HeuristicId::SO => "SO",
            HeuristicId::HPI => "HPI",
            HeuristicId::HDI => "HDI",
            HeuristicId::LLHN => "LLHN",
            HeuristicId::IA => "IA",
            HeuristicId::CAR => "CAR",
            HeuristicId::CCLP => "CCLP",
        }
    }
}

impl fmt::Display for HeuristicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HeuristicId::ALL
            .into_iter()
            .find(|h| h.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown heuristic `{s}`")))
    }
}

/// A scored candidate pair, optionally carrying its ground truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredPair {
    pub u: NodeId,
    pub v: NodeId,
    pub score: f64,
    pub truth: Option<Polarity>,
}

impl ScoredPair {
    pub fn is_positive(&self) -> bool {
        self.truth == Some(Polarity::Positive)
    }
}

#[inline]
fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Reusable scoring state; holds the common-neighborhood buffer.
#[derive(Debug, Default)]
pub struct Scorer {
    common: Vec<NodeId>,
}

impl Scorer {
    /// Score of `(u, v)` without range or self-pair checks.
    pub fn score_unchecked(&mut self, g: &Graph, h: HeuristicId, u: NodeId, v: NodeId) -> f64 {
        let (nu, nv) = (g.adj(u), g.adj(v));
        let (du, dv) = (nu.len() as f64, nv.len() as f64);
        if h == HeuristicId::PA {
            return du * dv;
        }
        intersect_into(nu, nv, &mut self.common);
        let cn = &self.common;
        let c = cn.len() as f64;
        match h {
            HeuristicId::CN => c,
            HeuristicId::JA => ratio(c, du + dv - c),
            HeuristicId::SA => ratio(c, (du * dv).sqrt()),
            HeuristicId::SO => ratio(2.0 * c, du + dv),
            HeuristicId::HPI => ratio(c, du.max(dv)),
            HeuristicId::HDI => ratio(c, du.min(dv)),
            HeuristicId::LLHN => ratio(c, du * dv),
            HeuristicId::AA => cn
                .iter()
                .map(|&z| ratio(1.0, (g.degree(z) as f64).ln()))
                .sum(),
            HeuristicId::RA => cn.iter().map(|&z| ratio(1.0, g.degree(z) as f64)).sum(),
            HeuristicId::IA => cn
                .iter()
                .map(|&z| {
                    let links = intersection_size(g.adj(z), cn) as f64;
                    ratio(links + 2.0, g.degree(z) as f64)
                })
                .sum(),
            HeuristicId::CAR => cn
                .iter()
                .map(|&z| 1.0 + intersection_size(g.adj(z), cn) as f64 / 2.0)
                .sum(),
            HeuristicId::CCLP => cn.iter().map(|&z| g.clustering_at(z)).sum(),
            HeuristicId::PA => unreachable!(),
        }
    }

    pub fn score(&mut self, g: &Graph, h: HeuristicId, u: NodeId, v: NodeId) -> Result<f64> {
        g.check_node(u)?;
        g.check_node(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!("self-pair ({u}, {u})")));
        }
        Ok(self.score_unchecked(g, h, u, v))
    }
}

/// Similarity of `u` and `v` under heuristic `h`.
pub fn score(g: &Graph, h: HeuristicId, u: NodeId, v: NodeId) -> Result<f64> {
    Scorer::default().score(g, h, u, v)
}

/// Scores of a batch plus the mean wall-clock time per link.
#[derive(Debug, Clone)]
pub struct BatchScores {
    pub scored: Vec<ScoredPair>,
    /// `None` for an empty batch.
    pub mean_time: Option<Duration>,
}

fn score_pairs(g: &Graph, h: HeuristicId, sets: &[&PairSet]) -> Result<Vec<ScoredPair>> {
    let mut scorer = Scorer::default();
    let mut out = Vec::with_capacity(sets.iter().map(|s| s.len()).sum());
    for set in sets {
        for p in set.iter() {
            let score = scorer.score(g, h, p.u, p.v)?;
            out.push(ScoredPair {
                u: p.u,
                v: p.v,
                score,
                truth: Some(set.polarity),
            });
        }
    }
    Ok(out)
}

/// Scores every pair of `sets` in order, single-threaded, timing the whole pass.
pub fn score_batch(g: &Graph, h: HeuristicId, sets: &[&PairSet]) -> Result<BatchScores> {
    let start = Instant::now();
    let scored = score_pairs(g, h, sets)?;
    let elapsed = start.elapsed();
    let mean_time = (!scored.is_empty()).then(|| elapsed / scored.len() as u32);
    Ok(BatchScores { scored, mean_time })
}

/// Scores arbitrary pairs (no ground truth attached).
pub fn score_all(g: &Graph, h: HeuristicId, pairs: &[Pair]) -> Result<Vec<f64>> {
    let mut scorer = Scorer::default();
    pairs.iter().map(|p| scorer.score(g, h, p.u, p.v)).collect()
}

/// CSV dump with header `u,v,heuristic,score,truth`, using node labels.
pub fn write_score_dump<W: Write>(
    g: &Graph,
    h: HeuristicId,
    scored: &[ScoredPair],
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "v", "heuristic", "score", "truth"])?;
    for s in scored {
        let truth = match s.truth {
            Some(Polarity::Positive) => "1",
            Some(Polarity::Negative) => "0",
            None => "",
        };
        w.write_record([
            g.label(s.u),
            g.label(s.v),
            h.name(),
            &s.score.to_string(),
            truth,
        ])?;
    }
    w.flush().map_err(|e| Error::io("score dump", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::toy_graph;

    fn ab() -> (Graph, NodeId, NodeId) {
        let g = toy_graph();
        let a = g.node_by_label("a").unwrap();
        let b = g.node_by_label("b").unwrap();
        (g, a, b)
    }

    #[test]
    fn toy_values() {
        let (g, a, b) = ab();
        let expect = [
            (HeuristicId::CN, 2.0),
            (HeuristicId::PA, 4.0),
            (HeuristicId::JA, 1.0),
            (HeuristicId::AA, 1.0 / 4f64.ln() + 1.0 / 3f64.ln()),
            (HeuristicId::RA, 0.25 + 1.0 / 3.0),
            (HeuristicId::LLHN, 2.0 / 4.0),
            (HeuristicId::SA, 1.0),
            (HeuristicId::SO, 1.0),
            (HeuristicId::HPI, 1.0),
            (HeuristicId::HDI, 1.0),
            (HeuristicId::IA, 0.75 + 1.0),
            (HeuristicId::CAR, 3.0),
            (HeuristicId::CCLP, 1.0 / 3.0 + 2.0 / 3.0),
        ];
        for (h, want) in expect {
            let got = score(&g, h, a, b).unwrap();
            assert!((got - want).abs() < 1e-12, "{h}: {got} vs {want}");
        }
        assert!((score(&g, HeuristicId::AA, a, b).unwrap() - 1.6315).abs() < 1e-4);
    }

    #[test]
    fn no_common_neighbors_scores_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        for h in HeuristicId::ALL {
            let s = score(&g, h, NodeId(0), NodeId(2)).unwrap();
            if h == HeuristicId::PA {
                assert_eq!(s, 1.0);
            } else {
                assert_eq!(s, 0.0, "{h}");
            }
        }
    }

    #[test]
    fn isolated_endpoints_are_finite() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        for h in HeuristicId::ALL {
            assert_eq!(score(&g, h, NodeId(2), NodeId(0)).unwrap(), 0.0, "{h}");
        }
    }

    #[test]
    fn invalid_inputs() {
        let (g, a, _) = ab();
        assert!(matches!(score(&g, HeuristicId::CN, a, a), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            score(&g, HeuristicId::CN, a, NodeId(99)),
            Err(Error::NodeOutOfRange { .. })
        ));
    }

    #[test]
    fn batch_over_toy_non_edges() {
        let g = toy_graph();
        let id = |l: &str| g.node_by_label(l).unwrap();
        let pairs = PairSet::new(
            vec![
                Pair::new(id("a"), id("b")),
                Pair::new(id("a"), id("e")),
                Pair::new(id("b"), id("e")),
                Pair::new(id("d"), id("e")),
            ],
            Polarity::Negative,
        );
        let batch = score_batch(&g, HeuristicId::CN, &[&pairs]).unwrap();
        let scores: Vec<f64> = batch.scored.iter().map(|s| s.score).collect();
        assert_eq!(scores, vec![2.0, 1.0, 1.0, 1.0]);
        assert!(batch.mean_time.is_some());
        let single = PairSet::new(vec![Pair::new(id("a"), id("b"))], Polarity::Positive);
        let one = score_batch(&g, HeuristicId::AA, &[&single]).unwrap();
        assert_eq!(one.scored[0].score, score(&g, HeuristicId::AA, id("a"), id("b")).unwrap());
        assert!(one.scored[0].is_positive());
        let empty = PairSet::new(vec![], Polarity::Positive);
        let none = score_batch(&g, HeuristicId::CN, &[&empty]).unwrap();
        assert!(none.scored.is_empty() && none.mean_time.is_none());
    }

    #[test]
    fn parse_names() {
        assert_eq!("cclp".parse::<HeuristicId>().unwrap(), HeuristicId::CCLP);
        assert!("KATZ".parse::<HeuristicId>().is_err());
        assert_eq!(HeuristicId::ALL.len(), 13);
    }

    #[test]
    fn score_dump_format() {
        let (g, a, b) = ab();
        let scored = vec![ScoredPair { u: a, v: b, score: 2.0, truth: Some(Polarity::Positive) }];
        let mut buf = Vec::new();
        write_score_dump(&g, HeuristicId::CN, &scored, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "u,v,heuristic,score,truth\na,b,CN,2,1\n");
    }
}

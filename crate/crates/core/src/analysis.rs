//! Whole-graph analyses behind the command line: one-graph reports, the
//! exhaustive check of the regularity bounds, the family sweeps and the
//! matching-number census.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::ehrhart::{self, Dilations};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::graph::{make_family, FamilySpec, Graph};
use crate::matching;
use crate::normality;
use crate::toric::{self, GeneratorProfile};

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Run the fiber analysis on non-normal graphs.
    pub toric: bool,
    /// Degree bound for the fiber analysis; `2 * dim P` when absent.
    pub q_max: Option<u32>,
    pub monomial_budget: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { toric: false, q_max: None, monomial_budget: toric::DEFAULT_MONOMIAL_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub d: usize,
    pub edges: usize,
    pub bipartite: bool,
    pub connected: bool,
    pub edge_list: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Holds,
    NotApplicable,
    Violated,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Holds => "holds",
            VerdictStatus::NotApplicable => "not-applicable",
            VerdictStatus::Violated => "violated",
        })
    }
}

/// Outcome of comparing `reg K[G]` with `mat(G)` (non-bipartite normal) or
/// `mat(G) - 1` (bipartite).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// `"mat"` or `"mat-1"`; absent when the bound does not apply.
    pub bound_kind: Option<&'static str>,
    pub bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularitySource {
    /// Degree of the h*-vector of a normal edge ring.
    HStar,
    /// Single minimal generator found up to `certified_up_to`.
    PrincipalCertificate,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub value: Option<u32>,
    pub source: RegularitySource,
    /// For principal certificates: generators were searched up to this degree.
    pub certified_up_to: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub mat: usize,
    pub mu: usize,
    pub d_minus_mat: usize,
    pub matching: Vec<[usize; 2]>,
    pub edge_cover: Vec<[usize; 2]>,
    pub normal: bool,
    pub dim: usize,
    pub facet_count: usize,
    pub min_interior_q: Option<u32>,
    pub h_star: Option<Vec<i64>>,
    pub regularity: Regularity,
    pub theorem1: Verdict,
    pub generators: Option<GeneratorProfile>,
    /// Wall time; the only field that varies between identical runs.
    pub timing_ms: u64,
}

impl AnalysisReport {
    /// Copy with the timing cleared, for comparisons.
    pub fn without_timing(&self) -> AnalysisReport {
        AnalysisReport { timing_ms: 0, ..self.clone() }
    }
}

fn one_based(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

/// All invariants of one connected graph with at least two vertices.
pub fn analyze(g: &Graph, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    if g.d() < 2 {
        return Err(Error::InvalidGraph("analysis needs at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let bipartite = g.is_bipartite().is_some();
    let m = matching::maximum_matching(g);
    let cover = matching::min_edge_cover(g)?;
    let mat = m.len();
    if cover.len() + mat != g.d() {
        return Err(Error::Internal(format!("edge cover {} + matching {mat} != d = {}", cover.len(), g.d())));
    }
    let normal = normality::is_normal(g)?;
    let dil = Dilations::new(g)?;
    let dim = dil.polytope().dim();
    let facet_count = dil.polytope().facets().len();

    let (mut min_interior_q, mut h_star, mut generators) = (None, None, None);
    let regularity = if normal {
        let profile = dil.profile()?;
        let reg = ehrhart::regularity_from(&dil, &profile)?;
        min_interior_q = profile.min_interior_q;
        h_star = Some(profile.h_star);
        Regularity { value: Some(reg), source: RegularitySource::HStar, certified_up_to: None }
    } else if options.toric {
        let q_max = options.q_max.unwrap_or(2 * dim as u32).max(2);
        let profile = toric::minimal_generator_degrees_with_budget(g, q_max, options.monomial_budget)?;
        let reg = toric::principal_regularity_from(&profile);
        generators = Some(profile);
        match reg {
            Some(r) => Regularity {
                value: Some(r),
                source: RegularitySource::PrincipalCertificate,
                certified_up_to: Some(q_max),
            },
            None => Regularity { value: None, source: RegularitySource::Unknown, certified_up_to: Some(q_max) },
        }
    } else {
        Regularity { value: None, source: RegularitySource::Unknown, certified_up_to: None }
    };

    let theorem1 = if !normal {
        Verdict { status: VerdictStatus::NotApplicable, bound_kind: None, bound: None }
    } else {
        let (kind, bound) = if bipartite { ("mat-1", mat - 1) } else { ("mat", mat) };
        let reg = regularity.value.expect("normal graphs always get a regularity") as usize;
        let status = if reg <= bound { VerdictStatus::Holds } else { VerdictStatus::Violated };
        Verdict { status, bound_kind: Some(kind), bound: Some(bound) }
    };

    Ok(AnalysisReport {
        graph: GraphSummary {
            d: g.d(),
            edges: g.edge_count(),
            bipartite,
            connected: true,
            edge_list: g.edges_one_based(),
        },
        mat,
        mu: cover.len(),
        d_minus_mat: g.d() - mat,
        matching: one_based(&m.edges),
        edge_cover: one_based(&cover.edges),
        normal,
        dim,
        facet_count,
        min_interior_q,
        h_star,
        regularity,
        theorem1,
        generators,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub edge_list: Vec<[usize; 2]>,
    pub d: usize,
    pub mat: usize,
    pub reg: Option<u32>,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub n_max: usize,
    /// Isomorphism classes of connected graphs with `2 <= d <= n_max`.
    pub graphs: usize,
    pub normal: usize,
    pub bipartite: usize,
    /// Skipped: the bounds only concern normal edge rings.
    pub non_normal: usize,
    pub violations: Vec<Violation>,
    pub errors: Vec<String>,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }
}

/// Checks the regularity bounds on every connected graph with at most
/// `n_max` vertices, one graph per isomorphism class.
pub fn verify_theorem(n_max: usize) -> Result<VerificationSummary> {
    if !(2..=8).contains(&n_max) {
        return Err(Error::NotApplicable(format!("n_max must lie in 2..=8, got {n_max}")));
    }
    let graphs = enumerate::connected_graphs_upto(n_max)?;
    let options = AnalyzeOptions::default();
    let results: Vec<(Graph, Result<AnalysisReport>)> =
        graphs.into_par_iter().map(|g| {
            let r = analyze(&g, &options);
            (g, r)
        }).collect();
    let mut summary = VerificationSummary {
        n_max,
        graphs: results.len(),
        normal: 0,
        bipartite: 0,
        non_normal: 0,
        violations: Vec::new(),
        errors: Vec::new(),
    };
    for (g, r) in results {
        match r {
            Ok(rep) => {
                if !rep.normal {
                    summary.non_normal += 1;
                    continue;
                }
                summary.normal += 1;
                summary.bipartite += usize::from(rep.graph.bipartite);
                if rep.theorem1.status == VerdictStatus::Violated {
                    summary.violations.push(Violation {
                        edge_list: rep.graph.edge_list,
                        d: rep.graph.d,
                        mat: rep.mat,
                        reg: rep.regularity.value,
                        bound: rep.theorem1.bound,
                    });
                }
            }
            Err(e) => summary.errors.push(format!("{:?}: {e}", g.edges_one_based())),
        }
    }
    Ok(summary)
}

/// One row of a family sweep or census table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub params: String,
    pub d: usize,
    pub edges: usize,
    pub mat: usize,
    pub mu: usize,
    pub normal: bool,
    pub dim: usize,
    pub reg: Option<u32>,
    pub reg_source: RegularitySource,
    pub certified_up_to: Option<u32>,
    pub expected_reg: Option<u32>,
    pub expected_mat: Option<usize>,
    pub verdict: VerdictStatus,
    pub matched: bool,
}

impl SweepRow {
    fn from_report(family: &str, params: String, rep: &AnalysisReport, expected: Option<(u32, usize)>) -> Self {
        let matched = match expected {
            Some((reg, mat)) => rep.regularity.value == Some(reg) && rep.mat == mat,
            None => true,
        };
        SweepRow {
            family: family.to_string(),
            params,
            d: rep.graph.d,
            edges: rep.graph.edges,
            mat: rep.mat,
            mu: rep.mu,
            normal: rep.normal,
            dim: rep.dim,
            reg: rep.regularity.value,
            reg_source: rep.regularity.source,
            certified_up_to: rep.regularity.certified_up_to,
            expected_reg: expected.map(|e| e.0),
            expected_mat: expected.map(|e| e.1),
            verdict: rep.theorem1.status,
            matched,
        }
    }
}

/// A family member with the regularity and matching number it should have.
#[derive(Clone, Debug)]
pub struct FamilyCase {
    pub spec: FamilySpec,
    pub family: &'static str,
    pub params: String,
    pub expected_reg: u32,
    pub expected_mat: usize,
    /// Degree bound for the fiber analysis of non-normal members.
    pub q_max: Option<u32>,
}

/// Complete graphs `K_{2r}` and complete bipartite `K_{r+1,r+1}` with a path
/// of `2(m - r)` edges attached at vertex 1, for `2 <= r <= r_max` and
/// `r <= m <= r + 2`; two triangles joined by a path of `l` edges for
/// `1 <= l <= l_max`.
pub fn family_cases(r_max: usize, l_max: usize) -> Vec<FamilyCase> {
    let mut cases = Vec::new();
    for r in 2..=r_max {
        for m in r..=r + 2 {
            let len = 2 * (m - r);
            let with_path = |base: FamilySpec| {
                if len == 0 {
                    base
                } else {
                    FamilySpec::attach_path(base, 1, len)
                }
            };
            cases.push(FamilyCase {
                spec: with_path(FamilySpec::Complete(2 * r)),
                family: "complete+path",
                params: format!("r={r};m={m}"),
                expected_reg: r as u32,
                expected_mat: m,
                q_max: None,
            });
            cases.push(FamilyCase {
                spec: with_path(FamilySpec::CompleteBipartite(r + 1, r + 1)),
                family: "complete_bipartite+path",
                params: format!("r={r};m={m}"),
                expected_reg: r as u32,
                expected_mat: m + 1,
                q_max: None,
            });
        }
    }
    for l in 1..=l_max {
        cases.push(FamilyCase {
            spec: FamilySpec::TwoTrianglesPath(l),
            family: "two_triangles_path",
            params: format!("l={l}"),
            expected_reg: l as u32 + 2,
            expected_mat: 2 + l.div_ceil(2),
            q_max: Some(l as u32 + 4),
        });
    }
    cases
}

pub fn run_family_case(case: &FamilyCase) -> Result<SweepRow> {
    let g = make_family(&case.spec)?;
    let options = AnalyzeOptions { toric: true, q_max: case.q_max, ..AnalyzeOptions::default() };
    let rep = analyze(&g, &options)?;
    Ok(SweepRow::from_report(case.family, case.params.clone(), &rep, Some((case.expected_reg, case.expected_mat))))
}

pub fn run_families(r_max: usize, l_max: usize) -> Result<Vec<SweepRow>> {
    if r_max < 2 || l_max < 1 {
        return Err(Error::NotApplicable("families need r_max >= 2 and l_max >= 1".into()));
    }
    family_cases(r_max, l_max).par_iter().map(run_family_case).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Question5Summary {
    pub m: usize,
    pub n_max: usize,
    pub scope: &'static str,
    pub graphs: usize,
    pub normal: usize,
    pub max_reg_normal: Option<u32>,
    /// Non-normal graphs whose toric ideal has height one, hence is principal.
    pub principal: usize,
    pub max_reg_principal: Option<u32>,
    pub unknown: usize,
    pub rows: Vec<SweepRow>,
}

/// Regularities over connected graphs with `d <= n_max` and matching number
/// exactly `m`. Non-normal graphs are only resolved when their toric ideal
/// has height one (`|E| = dim P + 2`), which makes it principal; the
/// generator degree is then searched up to `2 dim P`.
pub fn question5_sweep(m: usize, n_max: usize) -> Result<Question5Summary> {
    if m < 1 || !(2..=8).contains(&n_max) {
        return Err(Error::NotApplicable("the matching-number census needs m >= 1 and 2 <= n_max <= 8".into()));
    }
    let graphs: Vec<Graph> = enumerate::connected_graphs_upto(n_max)?
        .into_iter()
        .filter(|g| matching::matching_number(g) == m)
        .collect();
    let rows: Vec<SweepRow> = graphs
        .par_iter()
        .map(|g| {
            let normal = normality::is_normal(g)?;
            let height_one = g.edge_count() == Dilations::new(g)?.polytope().dim() + 2;
            let options = AnalyzeOptions { toric: !normal && height_one, ..AnalyzeOptions::default() };
            let rep = analyze(g, &options)?;
            let params = rep.graph.edge_list.iter().map(|[a, b]| format!("{a}-{b}")).collect::<Vec<_>>().join(" ");
            Ok(SweepRow::from_report("census", params, &rep, None))
        })
        .collect::<Result<_>>()?;
    let max_of = |source: RegularitySource| rows.iter().filter(|r| r.reg_source == source).filter_map(|r| r.reg).max();
    Ok(Question5Summary {
        m,
        n_max,
        scope: "empirical, bounded scope",
        graphs: rows.len(),
        normal: rows.iter().filter(|r| r.normal).count(),
        max_reg_normal: max_of(RegularitySource::HStar),
        principal: rows.iter().filter(|r| r.reg_source == RegularitySource::PrincipalCertificate).count(),
        max_reg_principal: max_of(RegularitySource::PrincipalCertificate),
        unknown: rows.iter().filter(|r| r.reg.is_none()).count(),
        rows,
    })
}

pub const CSV_HEADER: [&str; 11] =
    ["family", "params", "d", "edges", "mat", "mu", "normal", "dim", "reg", "expected_reg", "verdict"];

/// Writes rows under the fixed CSV header. Unknown values are empty cells.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.family.clone(),
            r.params.clone(),
            r.d.to_string(),
            r.edges.to_string(),
            r.mat.to_string(),
            r.mu.to_string(),
            r.normal.to_string(),
            r.dim.to_string(),
            opt(r.reg),
            opt(r.expected_reg),
            r.verdict.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(s: FamilySpec) -> Graph {
        make_family(&s).unwrap()
    }

    #[test]
    fn triangle_report() {
        let rep = analyze(&family(FamilySpec::Complete(3)), &AnalyzeOptions::default()).unwrap();
        assert_eq!((rep.mat, rep.mu, rep.d_minus_mat), (1, 2, 2));
        assert!(rep.normal);
        assert_eq!(rep.regularity.value, Some(0));
        assert_eq!(rep.theorem1.status, VerdictStatus::Holds);
        assert_eq!(rep.theorem1.bound, Some(1));
    }

    #[test]
    fn square_report() {
        let rep = analyze(&family(FamilySpec::Cycle(4)), &AnalyzeOptions::default()).unwrap();
        assert_eq!((rep.mat, rep.mu), (2, 2));
        assert_eq!(rep.regularity.value, Some(1));
        assert_eq!(rep.h_star, Some(vec![1, 1]));
        assert_eq!(rep.theorem1.bound_kind, Some("mat-1"));
        assert_eq!(rep.theorem1.status, VerdictStatus::Holds);
    }

    #[test]
    fn two_triangles_report() {
        let g = family(FamilySpec::TwoTrianglesPath(2));
        let options = AnalyzeOptions { toric: true, q_max: Some(6), ..AnalyzeOptions::default() };
        let rep = analyze(&g, &options).unwrap();
        assert!(!rep.normal);
        assert_eq!(rep.mat, 3);
        assert_eq!(rep.regularity.value, Some(4));
        assert_eq!(rep.regularity.source, RegularitySource::PrincipalCertificate);
        assert_eq!(rep.regularity.certified_up_to, Some(6));
        assert_eq!(rep.theorem1.status, VerdictStatus::NotApplicable);
        let plain = analyze(&g, &AnalyzeOptions::default()).unwrap();
        assert_eq!(plain.regularity.source, RegularitySource::Unknown);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(analyze(&Graph::new(4, [(0, 1), (2, 3)]).unwrap(), &AnalyzeOptions::default()), Err(Error::Disconnected)));
        assert!(analyze(&Graph::empty(1).unwrap(), &AnalyzeOptions::default()).is_err());
        assert!(verify_theorem(9).is_err());
        assert!(run_families(1, 1).is_err());
    }

    #[test]
    fn verify_small() {
        let s = verify_theorem(2).unwrap();
        assert_eq!((s.graphs, s.normal, s.bipartite), (1, 1, 1));
        assert!(s.passed());
        let s = verify_theorem(4).unwrap();
        assert_eq!(s.graphs, 1 + 2 + 6);
        assert!(s.passed());
    }

    #[test]
    fn csv_layout() {
        let row = run_family_case(&family_cases(2, 1)[0]).unwrap();
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "family,params,d,edges,mat,mu,normal,dim,reg,expected_reg,verdict");
        assert_eq!(lines.next().unwrap(), "complete+path,r=2;m=2,4,6,2,2,true,3,2,2,holds");
    }

    #[test]
    fn question5_small() {
        let s = question5_sweep(1, 4).unwrap();
        assert_eq!(s.max_reg_normal, Some(0));
        assert!(s.rows.iter().all(|r| r.mat == 1));
        let s = question5_sweep(2, 5).unwrap();
        assert!(s.rows.iter().all(|r| r.mat == 2));
        assert_eq!(s.scope, "empirical, bounded scope");
    }
}

//! Stable file formats and report assembly.
//!
//! JSON is the single interchange format; rationals travel as "p/q"
//! strings so nothing is rounded, and every report is a pure function of
//! its input bytes (the analysis report embeds the input hash to make that
//! checkable). Text output is presentation only.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exact::{parse_rat, rat_to_string, Mat, Rat, SymMat};
use crate::fforacle::{BijectionCounts, LengthReport, PlaneCensus};
use crate::krasnov::{self, Chart, SignatureWalk};
use crate::pencil::{LinearSubspace, QuadricPencil, ReducedPencil};
use crate::verdict::{self, VerdictTable};
use crate::{Error, Result};

/// Pencil file: `{"N": int, "q0": [[rat]], "q1": [[rat]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PencilFile {
    #[serde(rename = "N")]
    pub ambient_dim: usize,
    pub q0: Vec<Vec<String>>,
    pub q1: Vec<Vec<String>>,
}

/// Subspace file: `{"r": int, "basis": [[rat]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub r: usize,
    pub basis: Vec<Vec<String>>,
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Mat> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = parsed.first().map(|r| r.len()) {
        if parsed.iter().any(|r| r.len() != w) {
            return Err(Error::Parse("ragged matrix in input file".into()));
        }
    }
    Ok(Mat::new(parsed))
}

fn matrix_strings(m: &Mat) -> Vec<Vec<String>> {
    m.rows
        .iter()
        .map(|row| row.iter().map(rat_to_string).collect())
        .collect()
}

pub fn pencil_from_json(bytes: &[u8]) -> Result<QuadricPencil> {
    let file: PencilFile =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("pencil file: {e}")))?;
    let q0 = SymMat::new(parse_matrix(&file.q0)?)?;
    let q1 = SymMat::new(parse_matrix(&file.q1)?)?;
    if q0.dim() != file.ambient_dim + 1 {
        return Err(Error::Parse(format!(
            "matrix size {} does not match N = {}",
            q0.dim(),
            file.ambient_dim
        )));
    }
    QuadricPencil::new(q0, q1)
}

pub fn pencil_to_json(pencil: &QuadricPencil) -> String {
    let file = PencilFile {
        ambient_dim: pencil.ambient_dim(),
        q0: matrix_strings(pencil.q0().mat()),
        q1: matrix_strings(pencil.q1().mat()),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn subspace_from_json(bytes: &[u8]) -> Result<LinearSubspace> {
    let file: SubspaceFile =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("subspace file: {e}")))?;
    let ell = LinearSubspace::new(parse_matrix(&file.basis)?)?;
    if ell.r() != file.r {
        return Err(Error::Parse(format!(
            "basis has {} rows but r = {}",
            ell.r() + 1,
            file.r
        )));
    }
    Ok(ell)
}

pub fn subspace_to_json(ell: &LinearSubspace) -> String {
    let file = SubspaceFile {
        r: ell.r(),
        basis: matrix_strings(ell.basis()),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Reduced fibration: a list of equations, each a list of
/// (exponent-vector, coefficient) pairs over the variables (s, t, y...).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReducedPencilFile {
    #[serde(rename = "N")]
    pub ambient_dim: usize,
    pub r: usize,
    pub variables: Vec<String>,
    pub equations: Vec<Vec<(Vec<u32>, String)>>,
}

pub fn reduced_pencil_to_file(rp: &ReducedPencil) -> ReducedPencilFile {
    let mut variables = vec!["s".to_string(), "t".to_string()];
    for i in rp.r + 1..=rp.ambient_dim {
        variables.push(format!("y{i}"));
    }
    ReducedPencilFile {
        ambient_dim: rp.ambient_dim,
        r: rp.r,
        variables,
        equations: rp
            .equations
            .iter()
            .map(|eq| {
                eq.terms
                    .iter()
                    .map(|(e, c)| (e.clone(), rat_to_string(c)))
                    .collect()
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingJson {
    pub chart: Chart,
    pub interval: [String; 2],
    pub half: String,
}

/// Walk report: crossings as isolating intervals with chart tags, arcs as
/// `[p, n]` pairs, steps as a +/- string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WalkJson {
    pub crossings: Vec<CrossingJson>,
    pub arcs: Vec<[usize; 2]>,
    pub steps: String,
    pub invariant: Vec<usize>,
    pub h: usize,
    pub f: usize,
}

pub fn walk_to_json(walk: &SignatureWalk) -> Result<WalkJson> {
    let inv = krasnov::krasnov_of(walk)?;
    let hf = krasnov::height_frequency_of_walk(walk);
    Ok(WalkJson {
        crossings: walk
            .crossings
            .iter()
            .map(|c| CrossingJson {
                chart: c.chart,
                interval: [rat_to_string(&c.interval.0), rat_to_string(&c.interval.1)],
                half: if c.lower_half { "lower" } else { "upper" }.to_string(),
            })
            .collect(),
        arcs: walk
            .arcs
            .iter()
            .map(|a| [a.positives, a.negatives])
            .collect(),
        steps: walk.steps_string(),
        invariant: inv.runs().to_vec(),
        h: hf.h,
        f: hf.f,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaJson {
    pub coefficients: Vec<String>,
    pub squarefree: bool,
    pub real_root_intervals: Vec<[String; 2]>,
    pub root_at_infinity: bool,
}

/// Full analysis report: a pure function of the input file bytes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input_sha256: String,
    #[serde(rename = "N")]
    pub ambient_dim: usize,
    pub smooth: bool,
    pub delta: DeltaJson,
    pub walk: WalkJson,
    pub verdicts: VerdictTable,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// The analyze pipeline: parse, validate smoothness, walk, classify.
pub fn analyze(input: &[u8]) -> Result<AnalysisReport> {
    let pencil = pencil_from_json(input)?;
    pencil.ensure_smooth()?;
    let n = pencil.ambient_dim();
    let iso = crate::exact::isolate_real_roots(pencil.delta())?;
    let walk = krasnov::compute_walk(&pencil)?;
    let inv = krasnov::krasnov_of(&walk)?;
    let verdicts = verdict::decide(n, &inv)?;
    Ok(AnalysisReport {
        input_sha256: hex(&Sha256::digest(input)),
        ambient_dim: n,
        smooth: true,
        delta: DeltaJson {
            coefficients: pencil.delta().coeffs.iter().map(rat_to_string).collect(),
            squarefree: true,
            real_root_intervals: iso
                .intervals
                .iter()
                .map(|(a, b)| [rat_to_string(a), rat_to_string(b)])
                .collect(),
            root_at_infinity: iso.infinity_root,
        },
        walk: walk_to_json(&walk)?,
        verdicts,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionCellJson {
    pub intersection_dim: i64,
    pub span_in_x: bool,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusJson {
    pub prime: u64,
    pub r: usize,
    pub total: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub partition: Vec<PartitionCellJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bijection: Option<BijectionCounts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reduced_scheme_length: Option<LengthReport>,
}

pub fn census_to_json(
    census: &PlaneCensus,
    bijection: Option<BijectionCounts>,
    length: Option<LengthReport>,
) -> CensusJson {
    CensusJson {
        prime: census.prime,
        r: census.r,
        total: census.total,
        partition: census
            .partition
            .iter()
            .map(|(&(d, s), &c)| PartitionCellJson {
                intersection_dim: d,
                span_in_x: s,
                count: c,
            })
            .collect(),
        bijection,
        reduced_scheme_length: length,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberJson {
    pub at: [String; 2],
    pub gram: Vec<Vec<String>>,
    pub signature: [usize; 2],
    pub corank: usize,
}

pub fn fiber_to_json(f: &crate::pencil::ReducedFiber) -> FiberJson {
    FiberJson {
        at: [rat_to_string(&f.point.0), rat_to_string(&f.point.1)],
        gram: matrix_strings(f.gram.mat()),
        signature: [f.signature.positives, f.signature.negatives],
        corank: f.signature.corank,
    }
}

/// Parses "s/t", "s" (t = 1), or "inf" (`[1:0]`) into a parameter point.
pub fn parse_parameter_point(s: &str) -> Result<(Rat, Rat)> {
    let s = s.trim();
    if s == "inf" || s == "[1:0]" {
        return Ok((crate::exact::rat(1), crate::exact::rat(0)));
    }
    let v = parse_rat(s)?;
    Ok((v, crate::exact::rat(1)))
}

/// Aligned-text rendering of a classification report.
pub fn classification_text(report: &verdict::ClassificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "isotopy classes for N = {} ({} classes)\n",
        report.ambient_dim,
        report.classes.len()
    ));
    let width = report
        .classes
        .iter()
        .map(|c| c.invariant.len())
        .max()
        .unwrap_or(8)
        .max("invariant".len());
    out.push_str(&format!(
        "{:width$}  h  f  verdict rows (r: point/connected/rational/unirational)\n",
        "invariant"
    ));
    for c in &report.classes {
        let cells: Vec<String> = c
            .table
            .rows
            .iter()
            .map(|row| {
                format!(
                    "{}:{}{}{}{}",
                    row.r,
                    letter(&row.fano_real_point),
                    letter(&row.qr_real_connected),
                    letter(&row.fano_rational),
                    letter(&row.fano_unirational),
                )
            })
            .collect();
        out.push_str(&format!(
            "{:width$}  {}  {}  {}\n",
            c.invariant,
            c.h,
            c.f,
            cells.join("  ")
        ));
    }
    out.push_str("legend: y = yes, n = no, - = undetermined\n");
    out
}

fn letter(cell: &verdict::Cell) -> char {
    match cell.value {
        verdict::Tri::Yes => 'y',
        verdict::Tri::No => 'n',
        verdict::Tri::Undetermined => '-',
    }
}

/// Text rendering of an analysis report.
pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "pencil in P^{} (input sha256 {})\n",
        r.ambient_dim,
        &r.input_sha256[..16]
    ));
    out.push_str(&format!("smooth: {}\n", r.smooth));
    out.push_str(&format!(
        "degeneracy form: degree {}, {} real roots{}\n",
        r.ambient_dim + 1,
        r.delta.real_root_intervals.len() + usize::from(r.delta.root_at_infinity),
        if r.delta.root_at_infinity {
            " (one at [1:0])"
        } else {
            ""
        },
    ));
    out.push_str(&format!(
        "walk: {} arcs, steps {}\n",
        r.walk.arcs.len(),
        if r.walk.steps.is_empty() {
            "(none)"
        } else {
            &r.walk.steps
        }
    ));
    let inv = if r.walk.invariant.is_empty() {
        "()".to_string()
    } else {
        format!(
            "({})",
            r.walk
                .invariant
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    out.push_str(&format!(
        "invariant: {inv}, height {}, frequency {}\n",
        r.walk.h, r.walk.f
    ));
    for row in &r.verdicts.rows {
        out.push_str(&format!(
            "r = {}: real point {}, reduction connected {}, rational {}, unirational {}\n",
            row.r,
            word(&row.fano_real_point),
            word(&row.qr_real_connected),
            word(&row.fano_rational),
            word(&row.fano_unirational),
        ));
    }
    if let Some(cell) = &r.verdicts.second_maximal_reduction_rational {
        out.push_str(&format!(
            "second-maximal reduction rational: {}\n",
            word(cell)
        ));
    }
    for note in &r.verdicts.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn word(cell: &verdict::Cell) -> &'static str {
    match cell.value {
        verdict::Tri::Yes => "yes",
        verdict::Tri::No => "no",
        verdict::Tri::Undetermined => "undetermined",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn staircase_json() -> String {
        let pencil = QuadricPencil::new(
            SymMat::identity(6),
            SymMat::diagonal_i64(&[1, 2, 3, 4, 5, 6]),
        )
        .unwrap();
        pencil_to_json(&pencil)
    }

    #[test]
    fn pencil_round_trip() {
        let json = staircase_json();
        let p = pencil_from_json(json.as_bytes()).unwrap();
        assert_eq!(p.ambient_dim(), 5);
        assert_eq!(pencil_to_json(&p), json);
    }

    #[test]
    fn analyze_staircase() {
        let json = staircase_json();
        let report = analyze(json.as_bytes()).unwrap();
        assert_eq!(report.walk.invariant, vec![6]);
        assert_eq!((report.walk.h, report.walk.f), (6, 1));
        // no real points on any Fano scheme: h = 6 > N - 2r - 1 for all r
        assert!(report
            .verdicts
            .rows
            .iter()
            .all(|row| row.fano_real_point.value == verdict::Tri::No));
        // determinism: same bytes, same report
        let again = analyze(json.as_bytes()).unwrap();
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
    }

    #[test]
    fn analyze_rejects_malformed_and_singular() {
        assert!(matches!(analyze(b"not json"), Err(Error::Parse(_))));
        let singular =
            QuadricPencil::new(SymMat::identity(4), SymMat::diagonal_i64(&[1, 1, 2, 3])).unwrap();
        let json = pencil_to_json(&singular);
        assert!(matches!(
            analyze(json.as_bytes()),
            Err(Error::SingularPencil { .. })
        ));
    }

    #[test]
    fn subspace_round_trip_and_validation() {
        let ell = LinearSubspace::from_i64(&[&[1, 0, 0, 1], &[0, 1, -1, 0]]).unwrap();
        let json = subspace_to_json(&ell);
        let back = subspace_from_json(json.as_bytes()).unwrap();
        assert_eq!(back.r(), 1);
        assert!(subspace_from_json(br#"{"r": 2, "basis": [["1","0"]]}"#).is_err());
    }

    #[test]
    fn standard_position_equations_are_byte_exact_block_readoffs() {
        // A pencil already in adapted coordinates: the emitted equations
        // are the normalized block read-offs, pinned byte for byte.
        let q0 = SymMat::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
            .unwrap();
        let q1 = SymMat::from_i64(&[&[0, 2, 1, 0], &[2, 0, 0, 3], &[1, 0, -1, 0], &[0, 3, 0, 2]])
            .unwrap();
        let pencil = QuadricPencil::new(q0, q1).unwrap();
        let ell = LinearSubspace::from_i64(&[&[1, 0, 0, 0]]).unwrap();
        let reduced = crate::pencil::hyperbolic_reduce(&pencil, &ell).unwrap();
        let json = serde_json::to_string(&reduced_pencil_to_file(&reduced)).unwrap();
        // eq0: s*l00 + t*l10 with l00 = 2*y1, l10 = 4*y1 + 2*y2... after
        // content normalization: s*y1 + 2*t*y1 + t*y3... exponents over
        // (s, t, y1, y2, y3)
        let expected = concat!(
            r#"{"N":3,"r":0,"variables":["s","t","y1","y2","y3"],"equations":"#,
            r#"[[[[1,0,1,0,0],"1"],[[0,1,1,0,0],"2"],[[0,1,0,1,0],"1"]],"#,
            r#"[[[1,0,0,2,0],"1"],[[1,0,0,0,2],"1"],[[0,1,1,0,1],"6"],[[0,1,0,2,0],"-1"],[[0,1,0,0,2],"2"]]]}"#
        );
        assert_eq!(json, expected);
        // determinism on repeated runs
        let again = crate::pencil::hyperbolic_reduce(&pencil, &ell).unwrap();
        assert_eq!(
            json,
            serde_json::to_string(&reduced_pencil_to_file(&again)).unwrap()
        );
    }

    #[test]
    fn parameter_points_parse() {
        assert_eq!(
            parse_parameter_point("3/2").unwrap(),
            (crate::exact::ratio(3, 2), rat(1))
        );
        assert_eq!(parse_parameter_point("inf").unwrap(), (rat(1), rat(0)));
        assert!(parse_parameter_point("x").is_err());
    }
}

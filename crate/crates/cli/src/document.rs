//! Output documents and their three serializations (text, JSON, CSV).
//! Serialization is deterministic: fixed key order, canonical residues,
//! byte-stable output for a fixed input document.

use serde::{Deserialize, Serialize};

use picard_core::{
    a_number, cartier_matrix, hasse_witt_fast, p_rank, Convention, CurveRecord, OracleMismatch,
    PicardCurve, SweepConfig, SweepReport, DIFFERENTIAL_BASIS,
};

pub const SCHEMA_VERSION: &str = "1";

/// Result of a single-curve command. Matrices appear only when requested;
/// scalars are always present as canonical residues or small integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: String,
    pub command: String,
    pub p: u64,
    /// Canonical residues of the quartic, constant term first.
    pub f: Vec<u64>,
    pub p_mod_3: u8,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<MatrixSection>,
    #[serde(rename = "rank_H")]
    pub rank_h: u8,
    pub a_number: u8,
    pub p_rank: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSection {
    pub convention: String,
    pub basis: [String; 3],
    pub entries: [[u64; 3]; 3],
}

/// Result of an oracle-check run: the mismatch list is expected to be empty
/// and is always present in the serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheckDocument {
    pub schema_version: String,
    pub command: String,
    pub config: SweepConfig,
    pub mismatches: Vec<OracleMismatch>,
}

pub fn curve_document(
    command: &str,
    curve: &PicardCurve,
    matrix_convention: Option<Convention>,
) -> ResultDocument {
    let h = hasse_witt_fast(curve);
    let matrix = matrix_convention.map(|convention| {
        let m = match convention {
            Convention::HasseWitt => h.clone(),
            Convention::Cartier => cartier_matrix(curve),
        };
        MatrixSection {
            convention: m.convention().label().to_string(),
            basis: DIFFERENTIAL_BASIS.map(str::to_string),
            entries: m.entries(),
        }
    });
    ResultDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        p: curve.p(),
        f: (0..5).map(|i| curve.quartic().coeff(i).value()).collect(),
        p_mod_3: (curve.p() % 3) as u8,
        matrix,
        rank_h: h.rank() as u8,
        a_number: a_number(curve) as u8,
        p_rank: p_rank(curve) as u8,
    }
}

pub fn result_to_json(doc: &ResultDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn result_to_text(doc: &ResultDocument) -> String {
    // matrix text format: rows as space-separated residues, one per line
    if let Some(matrix) = &doc.matrix {
        let mut out = String::new();
        for row in matrix.entries {
            out.push_str(&format!("{} {} {}\n", row[0], row[1], row[2]));
        }
        return out;
    }
    let f = doc
        .f
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "p = {}\nf = {}\np_mod_3 = {}\nrank_H = {}\na_number = {}\np_rank = {}\n",
        doc.p, f, doc.p_mod_3, doc.rank_h, doc.a_number, doc.p_rank
    )
}

pub fn result_to_csv(doc: &ResultDocument) -> String {
    let f = doc
        .f
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    match &doc.matrix {
        Some(m) => {
            let cells = m
                .entries
                .iter()
                .flatten()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            format!(
                "p,f0,f1,f2,f3,f4,p_mod_3,convention,m11,m12,m13,m21,m22,m23,m31,m32,m33\n\
                 {},{},{},{},{}\n",
                doc.p, f, doc.p_mod_3, m.convention, cells
            )
        }
        None => format!(
            "p,f0,f1,f2,f3,f4,p_mod_3,rank_H,a_number,p_rank\n{},{},{},{},{},{}\n",
            doc.p, f, doc.p_mod_3, doc.rank_h, doc.a_number, doc.p_rank
        ),
    }
}

pub const SWEEP_CSV_HEADER: &str =
    "p,trial,f0,f1,f2,f3,f4,p_mod_3,rank_H,a_number,p_rank,predicted_a,matches_theorem";

fn record_csv_row(r: &CurveRecord) -> String {
    let f = r.f.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.p,
        r.trial,
        f,
        r.p_mod_3,
        r.rank_h,
        r.a_number,
        r.p_rank,
        r.predicted_a,
        r.matches_theorem
    )
}

pub fn sweep_to_json(report: &SweepReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// One row per record, in (p, trial) order.
pub fn sweep_to_csv(report: &SweepReport) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        out.push_str(&record_csv_row(r));
        out.push('\n');
    }
    out
}

pub fn sweep_to_text(report: &SweepReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("schema_version = {}\n", report.schema_version));
    out.push_str(&config_text(&report.config));
    out.push_str("\na-number tallies (counts for a = 0, 1, 2, 3):\n");
    for tally in &report.tallies {
        let c = tally.a_number_counts;
        out.push_str(&format!(
            "  p = {:<6} {:>6} {:>6} {:>6} {:>6}\n",
            tally.p, c[0], c[1], c[2], c[3]
        ));
    }
    out.push_str(&format!(
        "\ncounterexamples ({}):\n",
        report.counterexamples.len()
    ));
    for r in &report.counterexamples {
        out.push_str(&format!(
            "  p = {} trial = {} f = {:?} a_number = {} predicted_a = {}\n",
            r.p, r.trial, r.f, r.a_number, r.predicted_a
        ));
    }
    out.push_str(&format!(
        "\noracle mismatches ({}):\n",
        report.oracle_mismatches.len()
    ));
    for m in &report.oracle_mismatches {
        out.push_str(&mismatch_text(m));
    }
    out
}

fn config_text(config: &SweepConfig) -> String {
    let primes = match &config.primes {
        picard_core::PrimeSelection::List(list) => format!("{list:?}"),
        picard_core::PrimeSelection::Range {
            min,
            max,
            residue_mod_3,
        } => match residue_mod_3 {
            Some(r) => format!("primes in [{min}, {max}] with p = {r} mod 3"),
            None => format!("primes in [{min}, {max}]"),
        },
    };
    format!(
        "primes = {}\ntrials_per_prime = {}\nseed = {}\nrequire_nonzero_constant = {}\n\
         oracle_check = {}\noracle_bound = {}\n",
        primes,
        config.trials_per_prime,
        config.seed,
        config.require_nonzero_constant,
        config.oracle_check,
        config.oracle_bound
    )
}

fn mismatch_text(m: &OracleMismatch) -> String {
    let trial = m
        .trial
        .map(|t| t.to_string())
        .unwrap_or_else(|| "pinned".to_string());
    format!(
        "  p = {} trial = {} f = {:?} kind = {:?} left = {:?} right = {:?}\n",
        m.p, trial, m.f, m.kind, m.left, m.right
    )
}

pub fn oracle_to_json(doc: &OracleCheckDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn oracle_to_text(doc: &OracleCheckDocument) -> String {
    let mut out = config_text(&doc.config);
    out.push_str(&format!("\nmismatches ({}):\n", doc.mismatches.len()));
    for m in &doc.mismatches {
        out.push_str(&mismatch_text(m));
    }
    out
}

pub fn oracle_to_csv(doc: &OracleCheckDocument) -> String {
    let mut out = String::from("p,trial,f0,f1,f2,f3,f4,kind\n");
    for m in &doc.mismatches {
        let trial = m.trial.map(|t| t.to_string()).unwrap_or_default();
        let f = m.f.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let kind = match m.kind {
            picard_core::MismatchKind::FastVsOracle => "fast_vs_oracle",
            picard_core::MismatchKind::TransposeRelation => "transpose_relation",
        };
        out.push_str(&format!("{},{},{},{}\n", m.p, trial, f, kind));
    }
    out
}

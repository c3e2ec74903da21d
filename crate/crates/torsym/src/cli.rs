//! The `torsym` command-line interface.
//!
//! Exit codes are a stable contract: 0 on success, 1 on domain errors
//! (invalid pairs, failed preconditions), 2 on parse errors (malformed
//! documents or usage).

use crate::catalog::{self, CatalogError};
use crate::charpair::{
    check_delzant_sign_theorem, delzant_pair, CharacteristicPair, DelzantError, PairError,
};
use crate::document::{DocumentError, InequalityDocument, PairDocument};
use crate::report;
use crate::symmetry::{
    aut_char_pair, blowdown, blowup_class, build_construction_tree, extract_admissible_triple,
    stellar_blowup, SymmetryError,
};
use clap::{Parser, Subcommand};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DEFAULT_SIZE_GUARD: usize = 12;

#[derive(Parser)]
#[command(
    name = "torsym",
    version,
    about = "Exact symmetry analysis of quasitoric characteristic pairs",
    long_about = "Computes, for a characteristic pair given as a JSON document, the maximal \
                  compact connected symmetry type extending the torus, the automorphism group \
                  of the pair, equivariant blow-ups and blow-downs, and admissible triples. \
                  All arithmetic is exact and all output is deterministic."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a pair document: complex conditions, nonsingularity, vertex
    /// bound. Exit 0 iff valid.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Normalized signs, facet classes, group type, Weyl partition, and the
    /// construction tree.
    Symmetry {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// All pair automorphisms by brute force (guarded by facet count; set
    /// TORSYM_SIZE_GUARD to override the default of 12).
    Aut {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Blow up along a class or face, e.g. `torsym blowup pair.json F1,F2`.
    Blowup {
        file: PathBuf,
        /// Comma-separated facet names of the center.
        face: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Blow down an exceptional facet.
    Blowdown {
        file: PathBuf,
        facet: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Admissible triple of a Weyl partition, e.g. --partition "F1,F3|F2,F4"
    /// (unlisted facets become singletons).
    Triple {
        file: PathBuf,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        json: bool,
    },
    /// Emit a named catalog pair, e.g. `torsym catalog cp 2`.
    Catalog {
        name: String,
        /// Family parameters; negative values are fine (`hirzebruch -1`,
        /// `bott 2 -1,2 0,-1`).
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the pair of a rational simple polytope from inequalities, check
    /// the outward-normal sign condition, and run the symmetry analysis.
    Delzant {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<PairError> for CliError {
    fn from(e: PairError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DelzantError> for CliError {
    fn from(e: DelzantError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownCatalogError(name) => {
                let known: Vec<&str> = catalog::families().iter().map(|f| f.name()).collect();
                CliError::Domain(format!(
                    "unknown catalog family {:?}; known: {}",
                    name,
                    known.join(", ")
                ))
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn execute(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Validate { file, json } => cmd_validate(&file, json),
        Command::Symmetry { file, json, output } => cmd_symmetry(&file, json, output.as_deref()),
        Command::Aut { file, json } => cmd_aut(&file, json),
        Command::Blowup { file, face, output } => cmd_blowup(&file, &face, output.as_deref()),
        Command::Blowdown { file, facet, output } => {
            cmd_blowdown(&file, &facet, output.as_deref())
        }
        Command::Triple {
            file,
            partition,
            json,
        } => cmd_triple(&file, &partition, json),
        Command::Catalog {
            name,
            params,
            output,
        } => cmd_catalog(&name, &params, output.as_deref()),
        Command::Delzant { file, json } => cmd_delzant(&file, json),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {}", path.display(), e)))
}

fn load_pair(path: &Path) -> Result<CharacteristicPair, CliError> {
    let doc = PairDocument::parse(&read_file(path)?)?;
    Ok(doc.to_pair()?)
}

fn deliver(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {}", path.display(), e))),
        None => print_stdout(text),
    }
}

/// Writes to stdout, exiting quietly when the downstream reader has closed
/// the pipe.
fn print_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::Domain(format!("cannot write to stdout: {}", e))),
    }
}

fn cmd_validate(file: &Path, json: bool) -> Result<u8, CliError> {
    let doc = PairDocument::parse(&read_file(file)?)?;
    let (issues, pair) = match doc.to_pair() {
        Ok(pair) => {
            let report = pair.validate();
            (report.lines(), Some(pair))
        }
        Err(e) => (vec![e.to_string()], None),
    };
    let mut bound_lines: Vec<String> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    if let Some(pair) = &pair {
        if issues.is_empty() {
            match pair.normalize_omniorientation() {
                Ok((normalized, _)) => {
                    let bound = normalized.check_vertex_class_bound()?;
                    for v in &bound.violations {
                        bound_lines.push(v.to_string());
                    }
                }
                Err(PairError::ZeroDualError(f)) => notes.push(format!(
                    "vertex-class bound skipped: facet {} has Poincare dual zero",
                    f
                )),
                Err(e) => return Err(e.into()),
            }
        }
    }
    let valid = issues.is_empty() && bound_lines.is_empty();
    let text = if json {
        let mut body = serde_json::Map::new();
        body.insert("valid".into(), json!(valid));
        body.insert("issues".into(), json!(issues));
        body.insert("vertex_class_bound_violations".into(), json!(bound_lines));
        body.insert("notes".into(), json!(notes));
        report::json_report("validate", body)
    } else {
        let mut lines = Vec::new();
        if let Some(pair) = &pair {
            lines.push(format!("pair: {}", report::pair_summary(pair)));
        }
        for issue in &issues {
            lines.push(format!("invalid: {}", issue));
        }
        for b in &bound_lines {
            lines.push(format!("bound violation: {}", b));
        }
        lines.extend(notes.iter().cloned());
        lines.push(if valid { "valid".into() } else { "invalid".into() });
        lines.join("\n") + "\n"
    };
    print_stdout(&text)?;
    Ok(if valid { 0 } else { 1 })
}

/// The shared symmetry body: normalize, classes, group, tree.
struct SymmetryAnalysis {
    normalized: CharacteristicPair,
    signs: crate::charpair::OmniOrientationSigns,
    classes: crate::charpair::FacetClassPartition,
    group: crate::symmetry::SymmetryGroupType,
    tree: crate::symmetry::ConstructionTree,
}

fn analyze(pair: &CharacteristicPair) -> Result<SymmetryAnalysis, CliError> {
    let report = pair.validate();
    if !report.is_valid() {
        return Err(CliError::Domain(format!(
            "invalid pair: {}",
            report.lines().join("; ")
        )));
    }
    let (normalized, signs) = pair.normalize_omniorientation()?;
    let classes = normalized.facet_classes()?;
    let group = crate::symmetry::maximal_group_type(&normalized)?;
    let tree = build_construction_tree(&normalized)?;
    Ok(SymmetryAnalysis {
        normalized,
        signs,
        classes,
        group,
        tree,
    })
}

fn symmetry_text(a: &SymmetryAnalysis) -> String {
    let mut lines = Vec::new();
    lines.push(format!("pair: {}", report::pair_summary(&a.normalized)));
    lines.push(format!("signs: {}", report::signs_text(&a.signs)));
    lines.push("classes:".to_string());
    for class in &a.classes.classes {
        lines.push(format!(
            "  {} dual {}",
            report::set_text(&class.facets),
            class.representative
        ));
    }
    lines.push(format!(
        "weyl partition: {}",
        report::partition_text(&a.classes.blocks())
    ));
    lines.push(format!("group: {}", a.group.canonical_string()));
    if a.tree.steps.is_empty() {
        lines.push("construction tree: trivial (all classes singleton)".to_string());
    } else {
        lines.push("construction tree:".to_string());
        for (i, step) in a.tree.steps.iter().enumerate() {
            lines.push(report::tree_step_text(i + 1, step));
        }
    }
    lines.push(format!(
        "leaf: rank {}, {} facets",
        a.tree.leaf.rank(),
        a.tree.leaf.facet_count()
    ));
    lines.join("\n") + "\n"
}

fn symmetry_body(a: &SymmetryAnalysis) -> serde_json::Map<String, serde_json::Value> {
    let mut body = serde_json::Map::new();
    body.insert("signs".into(), report::signs_value(&a.signs));
    body.insert("classes".into(), report::classes_value(&a.classes));
    body.insert(
        "weyl_partition".into(),
        json!(a.classes.blocks()),
    );
    body.insert("group".into(), report::group_value(&a.group));
    body.insert("tree".into(), report::tree_value(&a.tree));
    body
}

fn cmd_symmetry(file: &Path, json: bool, output: Option<&Path>) -> Result<u8, CliError> {
    let pair = load_pair(file)?;
    let analysis = analyze(&pair)?;
    let text = if json {
        report::json_report("symmetry", symmetry_body(&analysis))
    } else {
        symmetry_text(&analysis)
    };
    deliver(&text, output)?;
    Ok(0)
}

fn size_guard() -> usize {
    std::env::var("TORSYM_SIZE_GUARD")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SIZE_GUARD)
}

fn cmd_aut(file: &Path, json: bool) -> Result<u8, CliError> {
    let pair = load_pair(file)?;
    let guard = size_guard();
    if pair.facet_count() > guard {
        return Err(CliError::Domain(format!(
            "size guard: {} facets exceed the automorphism guard of {} \
             (set TORSYM_SIZE_GUARD to override)",
            pair.facet_count(),
            guard
        )));
    }
    let report_invalid = pair.validate();
    if !report_invalid.is_valid() {
        return Err(CliError::Domain(format!(
            "invalid pair: {}",
            report_invalid.lines().join("; ")
        )));
    }
    let (normalized, signs) = pair.normalize_omniorientation()?;
    let classes = normalized.facet_classes()?;
    let autos = aut_char_pair(&normalized)?;
    let in_image: Vec<bool> = autos
        .iter()
        .map(|a| {
            normalized.facets().iter().all(|f| {
                let image = a.f.apply(f);
                classes
                    .class_of(f)
                    .map(|c| c.facets.iter().any(|g| g == image))
                    .unwrap_or(false)
            })
        })
        .collect();
    let text = if json {
        let mut body = serde_json::Map::new();
        body.insert("order".into(), json!(autos.len()));
        body.insert("signs".into(), report::signs_value(&signs));
        body.insert(
            "automorphisms".into(),
            serde_json::Value::Array(
                autos
                    .iter()
                    .zip(&in_image)
                    .map(|(a, &flag)| report::automorphism_value(a, flag))
                    .collect(),
            ),
        );
        report::json_report("aut", body)
    } else {
        let mut lines = Vec::new();
        lines.push(format!("pair: {}", report::pair_summary(&normalized)));
        lines.push(format!("signs: {}", report::signs_text(&signs)));
        lines.push(format!("automorphism group order: {}", autos.len()));
        for (i, (a, &flag)) in autos.iter().zip(&in_image).enumerate() {
            lines.push(format!(
                "  {}. {}; in image of phi: {}",
                i + 1,
                report::automorphism_text(a),
                if flag { "yes" } else { "no" }
            ));
        }
        lines.join("\n") + "\n"
    };
    print_stdout(&text)?;
    Ok(0)
}

fn parse_facet_list(arg: &str) -> Vec<String> {
    arg.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn cmd_blowup(file: &Path, face: &str, output: Option<&Path>) -> Result<u8, CliError> {
    let pair = load_pair(file)?;
    let center = parse_facet_list(face);
    // a class gets the full class checks; any other face a plain subdivision
    let is_class = pair
        .facet_classes()
        .map(|classes| {
            classes.blocks().iter().any(|b| {
                b.len() == center.len() && center.iter().all(|f| b.contains(f))
            })
        })
        .unwrap_or(false);
    let (blown, _label) = if is_class {
        blowup_class(&pair, &center)?
    } else {
        stellar_blowup(&pair, &center)?
    };
    let doc = PairDocument::from_pair(&blown);
    deliver(&doc.emit(), output)?;
    Ok(0)
}

fn cmd_blowdown(file: &Path, facet: &str, output: Option<&Path>) -> Result<u8, CliError> {
    let pair = load_pair(file)?;
    let down = blowdown(&pair, facet)?;
    let doc = PairDocument::from_pair(&down);
    deliver(&doc.emit(), output)?;
    Ok(0)
}

fn cmd_triple(file: &Path, partition: &str, json: bool) -> Result<u8, CliError> {
    let pair = load_pair(file)?;
    let mut blocks: Vec<Vec<String>> = partition
        .split('|')
        .map(parse_facet_list)
        .filter(|b| !b.is_empty())
        .collect();
    let mentioned: Vec<String> = blocks.iter().flatten().cloned().collect();
    for f in pair.facets() {
        if !mentioned.contains(f) {
            blocks.push(vec![f.clone()]);
        }
    }
    let triple = extract_admissible_triple(&pair, &blocks)?;
    let text = if json {
        let mut body = serde_json::Map::new();
        body.insert("triple".into(), report::triple_value(&triple));
        report::json_report("triple", body)
    } else {
        let reduced_doc = PairDocument::from_pair(&triple.reduced_pair);
        report::triple_text(&triple).join("\n") + "\n" + &reduced_doc.emit()
    };
    print_stdout(&text)?;
    Ok(0)
}

fn cmd_catalog(name: &str, params: &[String], output: Option<&Path>) -> Result<u8, CliError> {
    let pair = catalog::build(name, params)?;
    let doc = PairDocument::from_pair(&pair);
    deliver(&doc.emit(), output)?;
    Ok(0)
}

fn cmd_delzant(file: &Path, json: bool) -> Result<u8, CliError> {
    let doc = InequalityDocument::parse(&read_file(file)?)?;
    let pair = delzant_pair(&doc.halfspaces)?;
    let sign_report = check_delzant_sign_theorem(&pair)?;
    let analysis = analyze(&pair)?;
    let text = if json {
        let mut body = symmetry_body(&analysis);
        body.insert(
            "sign_theorem".into(),
            json!({
                "passed": sign_report.passed(),
                "checked_pairs": sign_report.checked_pairs,
                "violations": sign_report
                    .violations
                    .iter()
                    .map(|v| json!({
                        "facet_a": v.facet_a,
                        "facet_b": v.facet_b,
                        "dual_a": report::vector_value(&v.representative_a),
                        "dual_b": report::vector_value(&v.representative_b),
                    }))
                    .collect::<Vec<_>>(),
            }),
        );
        body.insert(
            "pair".into(),
            report::document_value(&PairDocument::from_pair(&pair)),
        );
        report::json_report("delzant", body)
    } else {
        let mut head = format!(
            "sign theorem: {} ({} facet pairs checked)\n",
            if sign_report.passed() { "pass" } else { "FAIL" },
            sign_report.checked_pairs
        );
        for v in &sign_report.violations {
            head.push_str(&format!(
                "  violation: {} vs {} ({} = -{})\n",
                v.facet_a, v.facet_b, v.representative_a, v.representative_b
            ));
        }
        head + &symmetry_text(&analysis)
    };
    print_stdout(&text)?;
    Ok(if sign_report.passed() { 0 } else { 1 })
}

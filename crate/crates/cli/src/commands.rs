//! Subcommand implementations. Every command emits deterministic JSON; the
//! returned code follows the exit contract (0 ok, 1 deviation, 2 usage).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use twocover_core::ball::{bs_ball, covering_to_k, covering_to_l, KRuleVariant};
use twocover_core::io::{
    complex_to_json, json_to_complex, json_to_map, json_to_presentation, map_to_json,
    presentation_to_json, to_pretty_string, tree_to_json, voltage_to_json, ComplexJson, MapJson,
    PresentationJson,
};
use twocover_core::presentation::pi1_from_complex;
use twocover_core::rschreier::{subgroup_presentation, CyclicHom};
use twocover_core::tietze::auto_simplify;
use twocover_core::tree::labeled_tree_ball;
use twocover_core::voltage::search_common_cover;
use twocover_core::{complex_bs, complex_k, complex_l, verify_covering};

use crate::paper_verify::{run_pipeline, KRuleConfig, RunConfig};
use crate::{BuildTarget, Cli, Command, ExportFormat, PaperVerifyArgs, RuleArg};

pub fn run(cli: Cli) -> Result<u8, String> {
    let mut output = Output { out: cli.out.clone(), quiet: cli.quiet };
    match cli.command {
        Command::Build { target } => {
            let text = build_target(&target)?;
            output.emit(&text)?;
            Ok(0)
        }
        Command::VerifyCover { map } => {
            let m = load_map(&map)?;
            let m = if m.cell_map.is_none() {
                m.derive_cell_map().map_err(|e| e.to_string())?
            } else {
                m
            };
            let report = verify_covering(&m).map_err(|e| e.to_string())?;
            output.say(&format!(
                "covering check: {} ({} findings)",
                if report.pass() { "pass" } else { "fail" },
                report.findings.len()
            ));
            let value = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "config": { "map": map.display().to_string() },
                "pass": report.pass(),
                "findings": report.findings,
            });
            output.emit(&to_pretty_string(&value))?;
            Ok(if report.pass() { 0 } else { 1 })
        }
        Command::Pi1 { complex, spanning_tree } => {
            let cx = json_to_complex(&read_json::<ComplexJson>(&complex)?);
            let tree: Option<BTreeSet<String>> = spanning_tree
                .map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
            let p = pi1_from_complex(&cx, tree.as_ref()).map_err(|e| e.to_string())?;
            output.say(&format!(
                "{} generators, {} relators",
                p.generators.len(),
                p.relators.len()
            ));
            output.emit(&to_pretty_string(&presentation_to_json(&p)))?;
            Ok(0)
        }
        Command::Simplify { presentation } => {
            let p = json_to_presentation(&read_json::<PresentationJson>(&presentation)?)?;
            let (simple, moves) = auto_simplify(&p);
            output.say(&format!(
                "{} generators, {} relators after {} moves",
                simple.generators.len(),
                simple.relators.len(),
                moves.len()
            ));
            let value = json!({
                "presentation": presentation_to_json(&simple),
                "moves": moves,
            });
            output.emit(&to_pretty_string(&value))?;
            Ok(0)
        }
        Command::Rs { presentation, modulus, images, designated } => {
            let p = json_to_presentation(&read_json::<PresentationJson>(&presentation)?)?;
            let mut image_map = BTreeMap::new();
            for spec in &images {
                let (gen, residue) = spec
                    .split_once(':')
                    .ok_or_else(|| format!("--image takes gen:residue, got {spec:?}"))?;
                let residue: usize =
                    residue.parse().map_err(|_| format!("bad residue in {spec:?}"))?;
                image_map.insert(gen.to_string(), residue);
            }
            let hom = CyclicHom::new(modulus, image_map, designated);
            let (kernel, index) = subgroup_presentation(&p, &hom).map_err(|e| e.to_string())?;
            output.say(&format!(
                "index {index}; kernel has {} generators, {} relators",
                kernel.generators.len(),
                kernel.relators.len()
            ));
            let value = json!({
                "index": index,
                "presentation": presentation_to_json(&kernel),
            });
            output.emit(&to_pretty_string(&value))?;
            Ok(0)
        }
        Command::SearchCommonCover { a, b, max_a, max_b } => {
            let ca = json_to_complex(&read_json::<ComplexJson>(&a)?);
            let cb = json_to_complex(&read_json::<ComplexJson>(&b)?);
            let found = search_common_cover(&ca, &cb, max_a, max_b);
            let value = match &found {
                Some((va, vb, iso)) => json!({
                    "found": true,
                    "voltage_a": voltage_to_json(va),
                    "voltage_b": voltage_to_json(vb),
                    "isomorphism": iso,
                }),
                None => json!({
                    "found": false,
                    "max_sheets": [max_a, max_b],
                }),
            };
            output.say(&format!(
                "common cover up to {max_a} x {max_b} sheets: {}",
                if found.is_some() { "found" } else { "none" }
            ));
            output.emit(&to_pretty_string(&value))?;
            Ok(0)
        }
        Command::Export { input, format } => {
            let value: serde_json::Value = read_json(&input)?;
            let text = export(&value, format)?;
            output.emit(&text)?;
            Ok(0)
        }
        Command::PaperVerify(args) => {
            let cfg = config_from(&args);
            let outcome = run_pipeline(&cfg);
            for line in &outcome.section_lines {
                output.say(line);
            }
            output.say(&format!(
                "overall: {}",
                if outcome.pass { "pass" } else { "FAIL" }
            ));
            output.emit(&to_pretty_string(&outcome.report_json))?;
            Ok(if outcome.pass { 0 } else { 1 })
        }
    }
}

struct Output {
    out: Option<PathBuf>,
    quiet: bool,
}

impl Output {
    fn emit(&mut self, text: &str) -> Result<(), String> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn say(&self, line: &str) {
        if !self.quiet {
            eprintln!("{line}");
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn load_map(path: &Path) -> Result<twocover_core::CellularMap, String> {
    let json: MapJson = read_json(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = move |rel: &str| -> Result<ComplexJson, String> {
        let full = base.join(rel);
        let text = fs::read_to_string(&full)
            .map_err(|e| format!("cannot read {}: {e}", full.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", full.display()))
    };
    json_to_map(&json, &resolve)
}

fn build_target(target: &BuildTarget) -> Result<String, String> {
    let text = match target {
        BuildTarget::K => to_pretty_string(&complex_to_json(&complex_k())),
        BuildTarget::L => to_pretty_string(&complex_to_json(&complex_l())),
        BuildTarget::Bs { n, m } => {
            to_pretty_string(&complex_to_json(&complex_bs(*n, *m).map_err(|e| e.to_string())?))
        }
        BuildTarget::Tree { r } => to_pretty_string(&tree_to_json(&labeled_tree_ball(*r))),
        BuildTarget::Ball { r, i_min, i_max } => {
            let ball =
                bs_ball(&labeled_tree_ball(*r), *i_min, *i_max).map_err(|e| e.to_string())?;
            let mut json = complex_to_json(&ball.complex);
            json.interior = Some(ball.interior.iter().cloned().collect());
            to_pretty_string(&json)
        }
        BuildTarget::MapK { r, i_min, i_max, rule } => {
            let ball =
                bs_ball(&labeled_tree_ball(*r), *i_min, *i_max).map_err(|e| e.to_string())?;
            let variant = match rule {
                RuleArg::Corrected => KRuleVariant::Corrected,
                RuleArg::Literal => KRuleVariant::Literal,
            };
            let map = covering_to_k(&ball, variant).map_err(|e| e.to_string())?;
            to_pretty_string(&map_to_json(&map))
        }
        BuildTarget::MapL { r, i_min, i_max } => {
            let ball =
                bs_ball(&labeled_tree_ball(*r), *i_min, *i_max).map_err(|e| e.to_string())?;
            let map = covering_to_l(&ball).map_err(|e| e.to_string())?;
            to_pretty_string(&map_to_json(&map))
        }
    };
    Ok(text)
}

fn export(value: &serde_json::Value, format: ExportFormat) -> Result<String, String> {
    let object = value.as_object().ok_or("input is not a JSON object")?;
    if object.contains_key("source") {
        let map: MapJson =
            serde_json::from_value(value.clone()).map_err(|e| format!("bad map file: {e}"))?;
        return Ok(match format {
            ExportFormat::Json => to_pretty_string(&map),
            ExportFormat::Dot => crate::dot::map_dot(&map),
        });
    }
    if object.contains_key("vertices") {
        let cx: ComplexJson =
            serde_json::from_value(value.clone()).map_err(|e| format!("bad complex file: {e}"))?;
        return Ok(match format {
            ExportFormat::Json => to_pretty_string(&cx),
            ExportFormat::Dot => crate::dot::complex_dot(&cx),
        });
    }
    Err("input is neither a complex nor a map file".to_string())
}

fn config_from(args: &PaperVerifyArgs) -> RunConfig {
    RunConfig {
        tree_radius: args.tree_radius,
        min_height: args.min_height,
        max_height: args.max_height,
        k_rule: match args.k_rule {
            RuleArg::Corrected => KRuleConfig::Corrected,
            RuleArg::Literal => KRuleConfig::Literal,
        },
        max_sheets_a: args.max_sheets_a,
        max_sheets_b: args.max_sheets_b,
        cert_max_factors: args.cert_max_factors,
        cert_max_conjugator_len: args.cert_max_conjugator_len,
    }
}

//! The end-to-end verification pipeline: catalog integrity, cell merges,
//! the presentation and kernel chains, covering verification over a
//! truncated ball, the double cover of L, and the bounded common-cover
//! search. The pipeline passes iff every expected-pass step passes and the
//! expected-fail step (the literal edge rule onto K) fails as recorded.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde_json::json;

use twocover_core::ball::{bs_ball, covering_to_k, covering_to_l, KRuleVariant};
use twocover_core::presentation::{abelian_invariants, pi1_from_complex, rename_isomorphic};
use twocover_core::report::{Severity, VerificationReport};
use twocover_core::tietze::{find_certificate, tietze_apply, SearchBounds};
use twocover_core::tree::labeled_tree_ball;
use twocover_core::voltage::{build_cover, search_common_cover, Perm, Voltage};
use twocover_core::witness::{commensurability_witness, h_pipeline};
use twocover_core::word::Word;
use twocover_core::{
    complex_bs, complex_isomorphic, complex_k, complex_l, presentation_bs, verify_covering,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRuleConfig {
    Corrected,
    Literal,
}

/// Run configuration; the defaults reproduce the golden report.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tree_radius: usize,
    pub min_height: i64,
    pub max_height: i64,
    pub k_rule: KRuleConfig,
    pub max_sheets_a: usize,
    pub max_sheets_b: usize,
    pub cert_max_factors: usize,
    pub cert_max_conjugator_len: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tree_radius: 2,
            min_height: -8,
            max_height: 8,
            k_rule: KRuleConfig::Corrected,
            max_sheets_a: 3,
            max_sheets_b: 3,
            cert_max_factors: 4,
            cert_max_conjugator_len: 6,
        }
    }
}

impl RunConfig {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "tree_radius": self.tree_radius,
            "min_height": self.min_height,
            "max_height": self.max_height,
            "k_rule": match self.k_rule {
                KRuleConfig::Corrected => "corrected",
                KRuleConfig::Literal => "literal",
            },
            "max_sheets_a": self.max_sheets_a,
            "max_sheets_b": self.max_sheets_b,
            "cert_max_factors": self.cert_max_factors,
            "cert_max_conjugator_len": self.cert_max_conjugator_len,
        })
    }
}

pub struct PipelineOutcome {
    pub report_json: serde_json::Value,
    pub pass: bool,
    pub section_lines: Vec<String>,
}

struct Section {
    name: &'static str,
    report: VerificationReport,
}

impl Section {
    fn new(name: &'static str) -> Self {
        Section { name, report: VerificationReport::new() }
    }

    fn check(&mut self, ok: bool, pass_msg: impl Into<String>, fail_msg: impl Into<String>) {
        if ok {
            self.report.info(self.name, pass_msg);
        } else {
            self.report.error(self.name, fail_msg);
        }
    }
}

fn section_catalog() -> Section {
    let mut s = Section::new("catalog");
    let complexes = [
        ("K", complex_k()),
        ("L", complex_l()),
        ("BS(2,4)", complex_bs(2, 4).expect("positive parameters")),
        ("BS(4,16)", complex_bs(4, 16).expect("positive parameters")),
    ];
    for (name, cx) in &complexes {
        let report = cx.validate();
        s.check(
            report.pass(),
            format!("{name} validates"),
            format!("{name} fails validation: {:?}", report.errors().next()),
        );
    }
    for (name, expected) in [("K", 0), ("L", 0)] {
        let cx = complexes.iter().find(|(n, _)| *n == name).map(|(_, c)| c).unwrap();
        let chi = cx.euler_characteristic();
        s.check(
            chi == expected,
            format!("euler characteristic of {name} is {chi}"),
            format!("euler characteristic of {name} is {chi}, expected {expected}"),
        );
    }
    s
}

fn section_merges() -> Section {
    let mut s = Section::new("merges");
    match complex_k().merge_cells_along_edge("z") {
        Ok(merged) => {
            let bs = complex_bs(2, 4).expect("positive parameters");
            s.check(
                merged.cells().len() == 1,
                "merging K along z leaves one 2-cell",
                format!("merging K along z leaves {} cells", merged.cells().len()),
            );
            s.check(
                complex_isomorphic(&merged, &bs).is_some(),
                "merged K is cell-isomorphic to the BS(2,4) complex",
                "merged K is not cell-isomorphic to the BS(2,4) complex",
            );
        }
        Err(e) => s.check(false, "", format!("merging K along z failed: {e}")),
    }
    match complex_l().merge_cells_along_edge("t1") {
        Ok(merged) => {
            s.check(
                merged.cells().len() == 3,
                "merging L along t1 leaves three 2-cells",
                format!("merging L along t1 leaves {} cells", merged.cells().len()),
            );
            let before = pi1_from_complex(&complex_l(), None).map(|p| abelian_invariants(&p));
            let after = pi1_from_complex(&merged, None).map(|p| abelian_invariants(&p));
            let expected = (2, vec![BigInt::from(6)]);
            s.check(
                before.as_ref() == Ok(&expected) && after.as_ref() == Ok(&expected),
                "merging preserves the abelianization, rank 2 torsion [6]",
                format!("abelianization mismatch: {before:?} vs {after:?}"),
            );
        }
        Err(e) => s.check(false, "", format!("merging L along t1 failed: {e}")),
    }
    s
}

fn section_pi1() -> Section {
    let mut s = Section::new("pi1");
    match twocover_core::witness::simplified_pi1_k() {
        Ok(pk) => {
            let bs24 = presentation_bs(2, 4).expect("positive parameters");
            s.check(
                rename_isomorphic(&pk, &bs24).is_some(),
                "simplified pi1(K) is the BS(2,4) presentation",
                "simplified pi1(K) is not the BS(2,4) presentation",
            );
            s.check(
                abelian_invariants(&pk) == (1, vec![BigInt::from(2)]),
                "pi1(K) abelianization is rank 1 torsion [2]",
                format!("pi1(K) abelianization is {:?}", abelian_invariants(&pk)),
            );
        }
        Err(e) => s.check(false, "", e),
    }
    match twocover_core::witness::simplified_pi1_l() {
        Ok(pl) => {
            let target = twocover_core::Presentation::new(
                vec!["c".into(), "y".into(), "t".into()],
                vec![
                    Word::parse_compact("y^-1 c c y c^-1 c^-1").unwrap(),
                    Word::parse_compact("t^-1 c c t c^-8").unwrap(),
                ],
            );
            s.check(
                rename_isomorphic(&pl, &target).is_some(),
                "simplified pi1(L) reaches the three-generator form",
                "simplified pi1(L) missed the three-generator form",
            );
            s.check(
                abelian_invariants(&pl) == (2, vec![BigInt::from(6)]),
                "pi1(L) abelianization is rank 2 torsion [6]",
                format!("pi1(L) abelianization is {:?}", abelian_invariants(&pl)),
            );
        }
        Err(e) => s.check(false, "", e),
    }
    s
}

fn section_kernels(cfg: &RunConfig) -> Section {
    let mut s = Section::new("kernels");
    let witness = commensurability_witness();
    let pass = witness.pass();
    s.report.absorb("witness", witness);
    s.check(pass, "commensurability witness passes", "commensurability witness failed");

    // the configured bounded search must rediscover the first commutator
    // certificate of the index-two script
    let bounds = SearchBounds {
        max_factors: cfg.cert_max_factors,
        max_conjugator_len: cfg.cert_max_conjugator_len,
        max_iterations: 200_000,
    };
    let rediscovered = h_pipeline().ok().and_then(|pipe| {
        let after_add = tietze_apply(&pipe.rs_output, &pipe.script.moves[0]).ok()?;
        let target = Word::commutator(
            &Word::parse_compact("cw@1").unwrap(),
            &Word::parse_compact("x1").unwrap(),
        );
        find_certificate(&after_add, &target, bounds)
            .filter(|c| twocover_core::verify_certificate(&after_add, &target, c))
    });
    s.check(
        rediscovered.is_some(),
        format!(
            "bounded certificate search (<= {} factors, conjugators <= {}) rediscovers the commutator certificate",
            cfg.cert_max_factors, cfg.cert_max_conjugator_len
        ),
        "bounded certificate search failed to rediscover the commutator certificate",
    );
    s
}

fn section_coverings(cfg: &RunConfig) -> Section {
    let mut s = Section::new("coverings");
    let tree = labeled_tree_ball(cfg.tree_radius);
    let ball = match bs_ball(&tree, cfg.min_height, cfg.max_height) {
        Ok(b) => b,
        Err(e) => {
            s.check(false, "", format!("ball construction failed: {e}"));
            return s;
        }
    };
    s.check(
        !ball.interior.is_empty(),
        format!("interior has {} vertices", ball.interior.len()),
        "interior set is empty; enlarge the height range or radius",
    );
    let validation = ball.complex.validate();
    s.check(
        validation.pass(),
        "truncated complex validates",
        "truncated complex fails validation",
    );

    match covering_to_l(&ball).and_then(|m| verify_covering(&m)) {
        Ok(report) => {
            let pass = report.pass();
            if !pass {
                s.report.absorb("map-to-L", report);
            }
            s.check(pass, "covering onto L verifies on the interior", "covering onto L fails");
        }
        Err(e) => s.check(false, "", format!("covering onto L: {e}")),
    }

    let pass_variant = match cfg.k_rule {
        KRuleConfig::Corrected => KRuleVariant::Corrected,
        KRuleConfig::Literal => KRuleVariant::Literal,
    };
    match covering_to_k(&ball, pass_variant).and_then(|m| verify_covering(&m)) {
        Ok(report) => {
            let pass = report.pass();
            if !pass {
                for f in report.findings.iter().filter(|f| f.severity == Severity::Error).take(3) {
                    s.report.findings.push(f.clone());
                }
            }
            s.check(
                pass,
                "configured covering onto K verifies on the interior",
                "configured covering onto K fails the link condition",
            );
        }
        Err(e) => s.check(false, "", format!("covering onto K: {e}")),
    }

    // expected-fail slot: the literal rule must collide at every interior vertex
    match covering_to_k(&ball, KRuleVariant::Literal).and_then(|m| verify_covering(&m)) {
        Ok(report) => {
            let failing: BTreeSet<&str> = report
                .findings
                .iter()
                .filter(|f| f.severity == Severity::Error)
                .map(|f| f.location.as_str())
                .collect();
            let everywhere = ball.interior.iter().all(|v| failing.contains(v.as_str()));
            s.check(
                !report.pass() && everywhere,
                "literal edge rule onto K fails as recorded, with a collision at every interior vertex",
                "literal edge rule onto K did not fail as recorded",
            );
            if let Some(example) = report.findings.iter().find(|f| f.severity == Severity::Error)
            {
                s.report.info_with(
                    "k-literal",
                    format!("sample collision at {}", example.location),
                    example.counterexample.clone().unwrap_or(serde_json::Value::Null),
                );
            }
        }
        Err(e) => s.check(false, "", format!("literal covering onto K: {e}")),
    }
    s.report.info(
        "k-rule",
        "the printed edge rule onto K keys on the height alone; the verifier accepts only \
         the variant keyed on height plus delta, and derived cell images key on delta where \
         the printed tables key on gamma",
    );
    s
}

fn section_double_cover() -> Section {
    let mut s = Section::new("double-cover");
    let l = complex_l();
    let voltage = Voltage {
        sheets: 2,
        perms: l
            .edges()
            .iter()
            .map(|e| {
                let p = if e.name == "cw" || e.name == "t1" {
                    Perm(vec![1, 0])
                } else {
                    Perm::identity(2)
                };
                (e.name.clone(), p)
            })
            .collect(),
    };
    match build_cover(&l, &voltage) {
        Ok((cover, projection)) => {
            s.check(
                cover.connected_components().len() == 1,
                "double cover of L is connected",
                "double cover of L is disconnected",
            );
            s.check(
                cover.euler_characteristic() == 0,
                "double cover has euler characteristic 0",
                format!("double cover has euler characteristic {}", cover.euler_characteristic()),
            );
            match verify_covering(&projection) {
                Ok(report) => s.check(
                    report.pass(),
                    "projection verifies with every vertex interior",
                    "projection fails the covering conditions",
                ),
                Err(e) => s.check(false, "", format!("projection: {e}")),
            }
            let inv = pi1_from_complex(&cover, None).map(|p| abelian_invariants(&p));
            let expected = (4, vec![BigInt::from(3)]);
            s.check(
                inv.as_ref() == Ok(&expected),
                "cover fundamental group abelianizes to rank 4 torsion [3], matching the kernel",
                format!("cover abelianization is {inv:?}"),
            );
        }
        Err(e) => s.check(false, "", format!("double cover of L: {e}")),
    }
    s
}

fn section_common_cover(cfg: &RunConfig) -> Section {
    let mut s = Section::new("common-cover");
    let found = search_common_cover(
        &complex_k(),
        &complex_l(),
        cfg.max_sheets_a,
        cfg.max_sheets_b,
    );
    s.check(
        found.is_none(),
        format!(
            "no common cover of K and L up to {} and {} sheets",
            cfg.max_sheets_a, cfg.max_sheets_b
        ),
        "a finite common cover was found; this contradicts the expected outcome",
    );
    s
}

pub fn run_pipeline(cfg: &RunConfig) -> PipelineOutcome {
    let sections = vec![
        section_catalog(),
        section_merges(),
        section_pi1(),
        section_kernels(cfg),
        section_coverings(cfg),
        section_double_cover(),
        section_common_cover(cfg),
    ];

    let mut section_lines = Vec::new();
    let mut all_pass = true;
    let mut findings = Vec::new();
    let mut section_json = Vec::new();
    for s in sections {
        let pass = s.report.pass();
        all_pass &= pass;
        section_lines.push(format!(
            "{} {}",
            if pass { "pass" } else { "FAIL" },
            s.name
        ));
        section_json.push(json!({
            "name": s.name,
            "pass": pass,
            "findings": s.report.findings,
        }));
        for mut f in s.report.findings {
            f.location = format!("{}/{}", s.name, f.location);
            findings.push(f);
        }
    }

    let report_json = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg.to_json(),
        "pass": all_pass,
        "sections": section_json,
        "findings": findings,
    });
    PipelineOutcome { report_json, pass: all_pass, section_lines }
}

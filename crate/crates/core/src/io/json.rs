//! JSON form of a detection result.

use serde::Serialize;

use crate::group::Detection;

#[derive(Serialize)]
struct GraphSize {
    vertices: usize,
    edges: usize,
    layers: u32,
}

#[derive(Serialize)]
struct Check {
    generator: String,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct TimingsMs {
    build: f64,
    search: f64,
    verify: f64,
}

#[derive(Serialize)]
struct GroupJson {
    representation: &'static str,
    generators: Vec<String>,
    orbits: Vec<Vec<String>>,
    group_order: String,
    graph: GraphSize,
    verified: bool,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<TimingsMs>,
}

/// Describes why a generator failed, using problem names.
pub fn describe_mismatch(detection: &Detection, mismatch: &crate::model::Mismatch) -> String {
    use crate::model::Mismatch;
    let names = detection.problem.names();
    match mismatch {
        Mismatch::Degree { expected, found } => format!("degree {found}, expected {expected}"),
        Mismatch::Class(i) => format!("{} changes variable class", names[*i]),
        Mismatch::Objective => "objective is not invariant".to_string(),
        Mismatch::Constraint(k) => format!(
            "image of {} matches no constraint",
            detection.problem.constraints[*k].label
        ),
    }
}

/// Generators in cycle notation, orbits (non-trivial only), graph size,
/// verification and, when requested, timings.
pub fn write_group_json(detection: &Detection, timings: bool) -> String {
    let names = detection.problem.names();
    let labels = detection.problem.constraint_labels();
    let generators = detection
        .group
        .generators()
        .iter()
        .map(|g| g.to_cycle_string(&names))
        .collect();
    let orbits = detection
        .orbits()
        .into_iter()
        .filter(|o| o.len() > 1)
        .map(|o| o.into_iter().map(|i| names[i].to_string()).collect())
        .collect();
    let checks = detection
        .report
        .checks
        .iter()
        .map(|c| Check {
            generator: c.generator.to_cycle_string(&names),
            verified: c.outcome.is_ok(),
            sigma: c.outcome.as_ref().ok().map(|s| s.to_cycle_string(&labels)),
            counterexample: c
                .outcome
                .as_ref()
                .err()
                .map(|m| describe_mismatch(detection, m)),
        })
        .collect();
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1000.0;
    let json = GroupJson {
        representation: detection.representation.name(),
        generators,
        orbits,
        group_order: detection.order().to_string(),
        graph: GraphSize {
            vertices: detection.graph_vertices,
            edges: detection.graph_edges,
            layers: detection.graph_layers,
        },
        verified: detection.report.all_verified(),
        checks,
        timings_ms: timings.then(|| TimingsMs {
            build: ms(detection.timings.build),
            search: ms(detection.timings.search),
            verify: ms(detection.timings.verify),
        }),
    };
    let mut text = serde_json::to_string_pretty(&json).expect("plain data serializes");
    text.push('\n');
    text
}

/// Golden cases: name and arguments. Run from the crate directory so that
/// input paths echoed in the output are stable.
#[allow(dead_code)]
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("project_rate", &["project", "--t", "2", "--c", "121", "--rate", "0.1"]),
    ("project_t0", &["project", "--t", "0", "--c", "5", "--rate", "0.3"]),
    ("project_simple", &["project", "--t", "-1", "--c", "10", "--law", "simple", "--param", "1.0"]),
    ("fiber", &["fiber", "--rate", "0.1", "--base", "100", "--t-min", "0", "--t-max", "2", "--steps", "2"]),
    ("fiber_zero_base", &["fiber", "--rate", "0.1", "--base", "0", "--t-min", "-1", "--t-max", "1", "--steps", "4"]),
    ("fiber_zero_rate", &["fiber", "--rate", "0", "--base", "7", "--t-min", "-1", "--t-max", "1", "--steps", "4"]),
    (
        "fiber_json",
        &[
            "fiber", "--rate", "0.1", "--base", "100", "--t-min", "0", "--t-max", "2", "--steps", "2", "--format",
            "json",
        ],
    ),
    (
        "section_fiber_curve",
        &["section-check", "--input", "tests/fixtures/fiber_curve.csv", "--rate", "0.1", "--targets", "0,100"],
    ),
    (
        "section_identity",
        &["section-check", "--input", "tests/fixtures/identity_trace.csv", "--rate", "0.1", "--targets", "-5,5"],
    ),
    ("isomap", &["isomap", "--t", "2", "--c", "121", "--from", "0.1", "--to", "0.21"]),
    ("force", &["force", "--law", "compound", "--param", "0.1", "--t", "7"]),
    ("force_simple", &["force", "--law", "simple", "--param", "0.1", "--t", "1"]),
    ("transport_h0", &["transport", "--t", "0", "--c", "100", "--h", "0", "--law", "compound", "--param", "0.1"]),
    ("transport", &["transport", "--t", "0", "--c", "100", "--h", "1", "--law", "compound", "--param", "0.1"]),
    ("christoffel", &["christoffel", "--t", "3", "--law", "exp-force", "--param", "0.05"]),
    ("christoffel_csv", &["christoffel", "--t", "1", "--law", "simple", "--param", "0.1", "--format", "csv"]),
];

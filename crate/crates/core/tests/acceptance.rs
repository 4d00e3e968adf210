//! Acceptance criteria, one line each. All comparisons are exact.

use std::process::ExitCode;

use moments_core::bell::{modified_stirling, stirling_convolution_printed};
use moments_core::verify::{self, IdentityResult, Status, VerifyConfig};
use moments_core::{Cap, Exec};
use num_bigint::BigInt;

const SEED: u64 = 20240611;

struct Criterion {
    id: u32,
    title: &'static str,
    run: fn() -> Vec<IdentityResult>,
}

fn ok(results: &[IdentityResult]) -> bool {
    results
        .iter()
        .all(|r| r.status == Status::Pass && r.instances > 0)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "closed-form expansion equals D^n(F_0 G_0), n <= 8, s <= 3",
            run: || {
                vec![verify::check_oracle_equality(
                    8,
                    3,
                    Cap::default(),
                    Exec::default(),
                )]
            },
        },
        Criterion {
            id: 2,
            title: "classical Faà di Bruno equals the constant-g oracle, n <= 10",
            run: || vec![verify::check_faa_di_bruno(10, Cap::default())],
        },
        Criterion {
            id: 3,
            title: "recurrence equals closed form, n <= 9, s <= 3, with the r = 0 slice",
            run: || {
                vec![
                    verify::check_recurrence(9, 3, Cap::default(), Exec::default()),
                    verify::check_r0_slice(9, 3, Cap::default()),
                ]
            },
        },
        Criterion {
            id: 4,
            title: "all coefficients integral, n <= 10, s <= 4",
            run: || {
                vec![verify::check_integrality(
                    10,
                    4,
                    Cap::default(),
                    Exec::default(),
                )]
            },
        },
        Criterion {
            id: 5,
            title: "Newton identity and subtract transform, multisets of size <= 8, entries <= 12",
            run: || {
                vec![
                    verify::check_newton(8, 12, Exec::default()),
                    verify::check_subtract_transform(8, 12, Exec::default()),
                ]
            },
        },
        Criterion {
            id: 6,
            title: "sub-partition sums for m <= 12, s <= 3; s = 0 binomial form for n <= 10",
            run: || {
                vec![
                    verify::check_subpartition_sums(12, 3, Cap::default()),
                    verify::check_shifted_subpartition_sums(12, 3, Cap::default()),
                    verify::check_binomial_specialization(10, Cap::default()),
                ]
            },
        },
        Criterion {
            id: 7,
            title: "independent-ψ product rule n <= 7; ψ = φ^(s) bridge n <= 7, s <= 3",
            run: || {
                vec![
                    verify::check_product_rule(7, Cap::default(), Exec::default()),
                    verify::check_psi_bridge(7, 3, Cap::default(), Exec::default()),
                ]
            },
        },
        Criterion {
            id: 8,
            title: "200 random polynomial triples, n <= 6, s <= 2, plus the 40t^3 hand case",
            run: || {
                vec![verify::check_random_triples(
                    SEED,
                    200,
                    6,
                    2,
                    Cap::default(),
                    Exec::default(),
                )]
            },
        },
        Criterion {
            id: 9,
            title: "Bell and Stirling identities, misprints reproduced as informational",
            run: || {
                let cap = Cap::default();
                let mut out = vec![
                    verify::check_product_form(7, 3, cap),
                    verify::check_s_independence(7, 3, cap),
                    verify::check_stirling_convolution(10),
                    verify::check_stirling_recurrence(10),
                    verify::check_row_sum(10),
                    verify::check_touchard_binomial(8),
                ];
                let conv = verify::report_printed_convolution(10);
                let rec = verify::report_printed_recurrence(10);
                let counterexample = modified_stirling(2, 2, 1) == Ok(BigInt::from(2))
                    && stirling_convolution_printed(2, 2, 1) == BigInt::from(1);
                let informational = [&conv, &rec]
                    .iter()
                    .all(|r| r.status == Status::Informational && r.mismatches > 0);
                out.push(IdentityResult {
                    name: "printed forms reproduce their counterexamples".to_string(),
                    status: if counterexample && informational {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    instances: conv.instances + rec.instances,
                    mismatches: 0,
                    detail: conv.detail.clone(),
                });
                out
            },
        },
        Criterion {
            id: 10,
            title: "two suite runs with the same seed give byte-identical reports",
            run: || {
                let config = VerifyConfig {
                    triples: 50,
                    ..VerifyConfig::new(5, 2, SEED)
                };
                let a = verify::run_suite(&config).to_json();
                let b = verify::run_suite(&VerifyConfig {
                    exec: Exec::Sequential,
                    ..config
                })
                .to_json();
                let c = verify::run_suite(&config).to_json();
                vec![IdentityResult {
                    name: "deterministic report".to_string(),
                    status: if a == b && a == c {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    instances: 3,
                    mismatches: 0,
                    detail: None,
                }]
            },
        },
    ]
}

fn main() -> ExitCode {
    let mut all = true;
    for c in criteria() {
        let results = (c.run)();
        let pass = ok(&results);
        all &= pass;
        let instances: u64 = results.iter().map(|r| r.instances).sum();
        println!(
            "{} [{}] {} ({} instances)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            instances
        );
        if !pass {
            for r in results
                .iter()
                .filter(|r| r.status != Status::Pass || r.instances == 0)
            {
                println!("    {}: {:?}", r.name, r.detail);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Runs the bundled fixture audit and prints the Markdown report.
fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "fixtures/audit/audit.toml".into());
    let mut config = letterbias::audit::AuditConfig::load(&path).expect("config");
    config.out_dir = std::env::temp_dir().join("letterbias-fixture-audit");
    let outcome = letterbias::audit::run_audit(&config).expect("audit");
    print!("{}", letterbias::report::to_markdown(&outcome.report));
}

use std::process::ExitCode;

use clap::Parser;
use xeno_cli::{execute, Cli, CliError, Command, Format};
use xeno_service::ServiceConfig;

fn main() -> ExitCode {
    // Usage errors exit with status 2 from inside clap.
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .with_writer(std::io::stderr)
        .init();

    if let Command::Serve(args) = &cli.command {
        return serve(args.bind, args.capacity);
    }
    match execute(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text()),
                Format::Json => print!("{}", report.json()),
            }
            if report.success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(cli.format, &e),
    }
}

fn fail(format: Format, e: &CliError) -> ExitCode {
    let code = if matches!(e, CliError::Usage(_)) { 2 } else { 1 };
    match format {
        Format::Text => eprintln!("error: {e}"),
        Format::Json => println!("{}", serde_json::json!({ "error": e.to_string() })),
    }
    ExitCode::from(code)
}

fn serve(bind: std::net::SocketAddr, capacity: usize) -> ExitCode {
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("error: cannot start the runtime: {e}");
            return ExitCode::from(1);
        }
    };
    match runtime.block_on(xeno_service::serve(bind, ServiceConfig { capacity })) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {bind}: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let cap = std::env::var(qpalg_cli::MAX_N_VAR).ok();
    let code = qpalg_cli::main_with(&args, cap.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}

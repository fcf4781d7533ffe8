fn main() -> std::process::ExitCode {
    driven_jc::cli::main()
}

fn main() -> std::process::ExitCode {
    quartic_hasse::cli::cli_main(std::env::args_os())
}

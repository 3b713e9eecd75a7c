fn main() -> std::process::ExitCode {
    mirrorstate::cli::main()
}

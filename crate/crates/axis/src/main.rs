fn main() -> std::process::ExitCode {
    axis::cli::main()
}

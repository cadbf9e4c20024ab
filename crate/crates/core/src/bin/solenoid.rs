fn main() {
    std::process::exit(solenoid_core::cli::run(std::env::args_os()));
}

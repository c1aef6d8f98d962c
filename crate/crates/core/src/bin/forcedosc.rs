fn main() {
    std::process::exit(forcedosc::interface::run(std::env::args_os()));
}

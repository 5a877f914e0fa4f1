fn main() {
    // command wiring lands once the engine is in place
}

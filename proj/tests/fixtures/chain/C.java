interface C extends B, A {
}

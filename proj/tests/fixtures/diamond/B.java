interface B extends A {
    void b();
}

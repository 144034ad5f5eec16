class Calls {
    private int hits;

    void a() {
        b();
        b();
    }

    void b() {
        hits = hits + 1;
    }

    void c(int x) {
        log(x);
        this.b();
    }
}

package geo;

public class Circle extends Shape {
    private double radius;

    public Circle(double radius) {
        this.radius = radius;
        setLabel("circle");
    }

    @Override
    public double area() {
        return Math.PI * radius * radius;
    }

    public double scaled(double k) {
        return area() * k * k; // area() inside a comment is not a call
    }
}

// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.shapes;

public class Circle extends Shape {
  private final double r;

  public Circle(double r) { this.r = r; }

  public double radius() { return r; }

  public double area() { return 3.14159 * r * r; }

  public double perimeter() { return 2 * 3.14159 * r; }

  public Shape scaled(double by) { return new Circle(r * by); }
}

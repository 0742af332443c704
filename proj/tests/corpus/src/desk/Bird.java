// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Bird extends Animal implements desk.shapes.Measurable {
  private float wingspan;

  public Bird(float wingspan) {
    super("bird", 2);
    this.wingspan = wingspan;
  }

  public String sound() { return "tweet"; }

  public double measure() { return wingspan * 2.0; }
}

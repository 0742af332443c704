// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Animal {
  protected String name;
  protected int legs;

  public Animal(String name, int legs) {
    this.name = name;
    this.legs = legs;
  }

  public String sound() { return "..."; }

  public int legs() { return legs; }

  public String toString() { return name; }

  public int describe() { return legs() * 10 + (sound() == null ? 0 : 1); }
}

// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Cat extends Animal {
  private boolean indoor;

  public Cat(boolean indoor) {
    super("cat", 4);
    this.indoor = indoor;
  }

  public String sound() { return indoor ? "purr" : "hiss"; }

  public int legs() { return indoor ? 4 : super.legs(); }
}

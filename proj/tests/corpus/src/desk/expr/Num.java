// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.expr;

public class Num extends Expr {
  final int value;

  public Num(int value) { this.value = value; }

  public int eval() { return value; }

  public int accept(Visitor v) { return v.visitNum(this); }
}

// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.expr;

public class Neg extends Expr {
  final Expr inner;

  public Neg(Expr inner) { this.inner = inner; }

  public int eval() { return -inner.eval(); }

  public int accept(Visitor v) { return v.visitNeg(this); }

  public int depth() { return 1 + inner.depth(); }
}

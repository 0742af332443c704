// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.expr;

public class Binary extends Expr {
  final char op;
  final Expr left;
  final Expr right;

  public Binary(char op, Expr left, Expr right) {
    this.op = op;
    this.left = left;
    this.right = right;
  }

  public int eval() {
    int l = left.eval();
    int r = right.eval();
    switch (op) {
      case 43: return l + r;
      case 45: return l - r;
      case 42: return l * r;
      case 47: return l / r;
      default: throw new IllegalArgumentException("op");
    }
  }

  public int accept(Visitor v) { return v.visitBinary(this); }

  public int depth() {
    int l = left.depth();
    int r = right.depth();
    return 1 + (l > r ? l : r);
  }
}

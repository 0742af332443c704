// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.expr;

public abstract class Expr {
  public abstract int eval();

  public abstract int accept(Visitor v);

  public int depth() { return 1; }
}

// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.expr;

public interface Visitor {
  int visitNum(Num n);

  int visitBinary(Binary b);

  int visitNeg(Neg n);
}

// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.bank;

public class InsufficientFunds extends Exception {
  public final long shortfall;

  public InsufficientFunds(long shortfall) {
    super("insufficient");
    this.shortfall = shortfall;
  }
}

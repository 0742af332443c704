// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.bank;

public class Savings extends Account {
  private double rate;

  public Savings(int number, double rate) {
    super(number);
    this.rate = rate;
  }

  public void accrue() { record((long) (cents * rate)); }

  public long fee() { return 0L; }
}

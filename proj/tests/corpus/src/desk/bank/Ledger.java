// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.bank;

public interface Ledger {
  void record(long amount);

  long balance();
}

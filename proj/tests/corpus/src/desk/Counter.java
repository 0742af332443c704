// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Counter {
  private int count;
  private int step = 1;
  protected long total;

  public Counter() {}

  public Counter(int step) { this.step = step; }

  public int next() {
    count += step;
    total += count;
    return count;
  }

  public int advance(int times) {
    for (int i = 0; i < times && i < 64; i++) next();
    return count;
  }

  public long total() { return total; }

  public void reset() {
    count = 0;
    total = 0L;
  }
}

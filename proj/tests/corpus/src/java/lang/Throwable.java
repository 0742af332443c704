// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class Throwable {
  private String message;

  public Throwable() {}

  public Throwable(String message) { this.message = message; }

  private Throwable[] suppressed;
  private int suppressedCount;

  public String getMessage() { return message; }

  public void addSuppressed(Throwable t) {
    if (t == this) throw new IllegalArgumentException("self-suppression");
    if (t == null) throw new NullPointerException("suppressed");
    if (suppressed == null) suppressed = new Throwable[2];
    if (suppressedCount == suppressed.length) {
      Throwable[] bigger = new Throwable[suppressedCount * 2];
      for (int i = 0; i < suppressedCount; i++) bigger[i] = suppressed[i];
      suppressed = bigger;
    }
    suppressed[suppressedCount++] = t;
  }

  public int suppressedCount() { return suppressedCount; }
}

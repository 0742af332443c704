// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Switches {
  public static int dense(int k) {
    switch (k) {
      case 0: return 10;
      case 1: return 20;
      case 2: return 30;
      case 3: return 45;
      case 4: return 55;
      case 5:
      case 6: return 66;
      default: return -1;
    }
  }

  public static int sparse(int k) {
    switch (k) {
      case -1000: return 1;
      case 7: return 2;
      case 100: return 3;
      case 65536: return 4;
      case 123456789: return 5;
      default: return 0;
    }
  }

  public static String named(int k) {
    switch (k & 3) {
      case 0: return "zero";
      case 1: return "one";
      case 2: return "two";
      default: return "many";
    }
  }

  public static int fallThrough(int k) {
    int r = 0;
    switch (k & 7) {
      case 0: r += 1;
      case 1: r += 2;
      case 2: r += 4; break;
      case 3: r += 8;
      default: r += 16;
    }
    return r;
  }

  public static int charClass(char c) {
    switch (c) {
      case 65: case 69: case 73: case 79: case 85: return 1;
      case 32: return 2;
      default: return c < 48 ? 3 : 4;
    }
  }
}

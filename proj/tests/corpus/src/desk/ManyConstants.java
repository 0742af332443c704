// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

// Enough distinct literals to push later constants past index 255.
public class ManyConstants {
  public static int ints(int k) {
    switch (k & 31) {
      case 0: return 100001;
      case 1: return 100002;
      case 2: return 100003;
      case 3: return 100004;
      case 4: return 100005;
      case 5: return 100006;
      case 6: return 100007;
      case 7: return 100008;
      case 8: return 100009;
      case 9: return 100010;
      case 10: return 100011;
      case 11: return 100012;
      case 12: return 100013;
      case 13: return 100014;
      case 14: return 100015;
      case 15: return 100016;
      case 16: return 100017;
      case 17: return 100018;
      case 18: return 100019;
      case 19: return 100020;
      case 20: return 100021;
      case 21: return 100022;
      case 22: return 100023;
      case 23: return 100024;
      case 24: return 100025;
      case 25: return 100026;
      case 26: return 100027;
      case 27: return 100028;
      case 28: return 100029;
      case 29: return 100030;
      case 30: return 100031;
      default: return 100032;
    }
  }

  public static long longs(int k) {
    switch (k & 15) {
      case 0: return 5000000001L;
      case 1: return 5000000002L;
      case 2: return 5000000003L;
      case 3: return 5000000004L;
      case 4: return 5000000005L;
      case 5: return 5000000006L;
      case 6: return 5000000007L;
      case 7: return 5000000008L;
      case 8: return 5000000009L;
      case 9: return 5000000010L;
      case 10: return 5000000011L;
      case 11: return 5000000012L;
      case 12: return 5000000013L;
      case 13: return 5000000014L;
      case 14: return 5000000015L;
      default: return 5000000016L;
    }
  }

  public static double doubles(int k) {
    switch (k & 15) {
      case 0: return 0.101;
      case 1: return 0.102;
      case 2: return 0.103;
      case 3: return 0.104;
      case 4: return 0.105;
      case 5: return 0.106;
      case 6: return 0.107;
      case 7: return 0.108;
      case 8: return 0.109;
      case 9: return 0.110;
      case 10: return 0.111;
      case 11: return 0.112;
      case 12: return 0.113;
      case 13: return 0.114;
      case 14: return 0.115;
      default: return 0.116;
    }
  }

  public static float floats(int k) {
    switch (k & 63) {
      case 0: return 10.5f;
      case 1: return 11.5f;
      case 2: return 12.5f;
      case 3: return 13.5f;
      case 4: return 14.5f;
      case 5: return 15.5f;
      case 6: return 16.5f;
      case 7: return 17.5f;
      case 8: return 18.5f;
      case 9: return 19.5f;
      case 10: return 20.5f;
      case 11: return 21.5f;
      case 12: return 22.5f;
      case 13: return 23.5f;
      case 14: return 24.5f;
      case 15: return 25.5f;
      case 16: return 26.5f;
      case 17: return 27.5f;
      case 18: return 28.5f;
      case 19: return 29.5f;
      case 20: return 30.5f;
      case 21: return 31.5f;
      case 22: return 32.5f;
      case 23: return 33.5f;
      case 24: return 34.5f;
      case 25: return 35.5f;
      case 26: return 36.5f;
      case 27: return 37.5f;
      case 28: return 38.5f;
      case 29: return 39.5f;
      case 30: return 40.5f;
      case 31: return 41.5f;
      case 32: return 42.5f;
      case 33: return 43.5f;
      case 34: return 44.5f;
      case 35: return 45.5f;
      case 36: return 46.5f;
      case 37: return 47.5f;
      case 38: return 48.5f;
      case 39: return 49.5f;
      case 40: return 50.5f;
      case 41: return 51.5f;
      case 42: return 52.5f;
      case 43: return 53.5f;
      case 44: return 54.5f;
      case 45: return 55.5f;
      case 46: return 56.5f;
      case 47: return 57.5f;
      case 48: return 58.5f;
      case 49: return 59.5f;
      case 50: return 60.5f;
      case 51: return 61.5f;
      case 52: return 62.5f;
      case 53: return 63.5f;
      case 54: return 64.5f;
      case 55: return 65.5f;
      case 56: return 66.5f;
      case 57: return 67.5f;
      case 58: return 68.5f;
      case 59: return 69.5f;
      case 60: return 70.5f;
      case 61: return 71.5f;
      case 62: return 72.5f;
      default: return 73.5f;
    }
  }

  public static int late(int k) { return k + 777777; }

  public static float lateFloat(float f) { return f + 0.0625f; }

  public static String lateString() { return "late"; }
}

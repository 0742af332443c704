// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class Error extends Throwable {
  public Error() {}

  public Error(String message) { super(message); }
}

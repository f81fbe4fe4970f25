/* The public header must be valid C. */
#include "ipm1d/ipm1d.h"

int main(void) {
  const char* v = ipm1d_version();
  return v == NULL;
}

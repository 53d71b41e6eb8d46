/* pipeline: flatMapAfterZip, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2){
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  while ((v_2 < n1) && (v_3 < n1))
  {
    int const t_4 = a1[v_3];
    int const t_5 = a1[v_2];
    int v_6 = 0;
    while (v_6 < n2)
    {
      int const t_7 = a2[v_6];
      int const t_8 = t_7 * (t_5 + t_4);
      v_1 = v_1 + t_8;
      v_6++;
    }
    v_2++;
    v_3++;
  }
  return v_1;
}

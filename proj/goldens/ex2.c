/* pipeline: ex2, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int fn(){
  int v_1 = 0;
  int v_2 = 10;
  int v_3 = 1;
  while (v_2 > 0)
  {
    int const t_4 = v_3;
    v_3++;
    int const t_5 = t_4 * t_4;
    if ((t_5 % 17) > 7)
    {
      v_2--;
      v_1 = v_1 + t_5;
    }
  }
  return v_1;
}
